#ifndef TSGEO_SYMEXPR_HPP
#define TSGEO_SYMEXPR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsgeo::sym {

using Rational = boost::multiprecision::cpp_rational;

/// Ordered list of coordinate names; expressions refer to coordinates by
/// index into one of these.
class Coords {
public:
    explicit Coords(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
    /// Index of `name`, or -1 if not a coordinate.
    int index_of(std::string_view name) const;
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

// exp(sum_i entries[i].second * x_{entries[i].first}); sorted by coordinate
// id, multipliers nonzero.
struct ExpAtom {
    std::vector<std::pair<int, Rational>> entries;
};

// prod_i x_{powers[i].first}^{powers[i].second}; sorted, powers >= 1.
struct Monomial {
    std::vector<std::pair<int, int>> powers;
};

struct TermKey {
    ExpAtom atom;
    Monomial mono;
};

int compare(const TermKey& a, const TermKey& b);
inline bool operator==(const TermKey& a, const TermKey& b) { return compare(a, b) == 0; }

struct TermKeyLess {
    bool operator()(const TermKey& a, const TermKey& b) const { return compare(a, b) < 0; }
};

// Sum of terms, keyed by (exp-atom, monomial); no zero coefficients.
using TermMap = std::map<TermKey, Rational, TermKeyLess>;

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, size_t pos);
    size_t position;
};

struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : std::runtime_error {
    explicit DivisionByZero(const std::string& msg) : std::runtime_error(msg) {}
};

/// Exact scalar in the field of fractions of polynomial-exponential sums:
/// rational-coefficient polynomials in the coordinates times exponentials of
/// rational linear forms in the coordinates. Immutable value type; every
/// operation returns a canonical form, so is_zero() is a complete zero test
/// on this class.
class Expr {
public:
    Expr() = default; // zero

    static Expr from_int(long long v);
    static Expr from_rational(Rational v);
    static Expr coordinate(int id);
    /// exp(sum a_i * x_i); entries need not be sorted, zero multipliers dropped.
    static Expr exp_linear(std::vector<std::pair<int, Rational>> arg);
    /// Builds num/den and normalizes. Throws DivisionByZero if den is empty.
    static Expr from_parts(TermMap num, TermMap den);

    bool is_zero() const { return num_.empty(); }
    bool is_one() const;
    /// The value as a rational if the expression is constant.
    std::optional<Rational> as_rational() const;
    bool is_constant() const { return as_rational().has_value(); }

    Expr operator-() const;
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b); // throws DivisionByZero
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    Expr& operator/=(const Expr& o) { return *this = *this / o; }

    /// Integer power; negative exponents require a nonzero base.
    Expr pow(long long e) const;

    /// Exact partial derivative with respect to coordinate `coord`.
    Expr derivative(int coord) const;

    /// Evaluate at the point (point[0], point[1], ...). Throws EvalError if a
    /// used coordinate has no entry or the denominator vanishes at the point.
    double evaluate(const std::vector<double>& point) const;

    /// Largest coordinate id used, or -1 for constants.
    int max_coordinate() const;

    /// Canonical, re-parseable text form with deterministic term order.
    std::string str(const Coords& coords) const;

    /// Semantic equality: (a - b).is_zero().
    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

    const TermMap& numerator() const { return num_; }
    const TermMap& denominator() const { return den_; }

private:
    void normalize();

    TermMap num_;            // empty = zero
    TermMap den_ = unit_den(); // never empty; leading coefficient 1
    static TermMap unit_den();
};

/// Parse `text` against the surface grammar (see docs/expression_grammar.md).
/// Coordinates are resolved against `coords`. Throws ParseError.
Expr parse(std::string_view text, const Coords& coords);

std::string rational_str(const Rational& q);

} // namespace tsgeo::sym

#endif
