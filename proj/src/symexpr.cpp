#include "tsgeo/symexpr.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <set>
#include <sstream>

namespace tsgeo::sym {

namespace {

bool valid_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
    });
}

Rational atom_multiplier(const ExpAtom& a, int v) {
    for (const auto& [id, m] : a.entries)
        if (id == v) return m;
    return Rational(0);
}

int mono_power(const Monomial& m, int v) {
    for (const auto& [id, p] : m.powers)
        if (id == v) return p;
    return 0;
}

void add_into(TermMap& m, const TermKey& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = m.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

TermMap mul_maps(const TermMap& a, const TermMap& b) {
    TermMap out;
    for (const auto& [ka, ca] : a) {
        for (const auto& [kb, cb] : b) {
            TermKey k;
            // merge exp atoms (multipliers add)
            auto ia = ka.atom.entries.begin(), ea = ka.atom.entries.end();
            auto ib = kb.atom.entries.begin(), eb = kb.atom.entries.end();
            while (ia != ea || ib != eb) {
                if (ib == eb || (ia != ea && ia->first < ib->first)) {
                    k.atom.entries.push_back(*ia++);
                } else if (ia == ea || ib->first < ia->first) {
                    k.atom.entries.push_back(*ib++);
                } else {
                    Rational s = ia->second + ib->second;
                    if (s != 0) k.atom.entries.emplace_back(ia->first, s);
                    ++ia, ++ib;
                }
            }
            // merge monomials (powers add)
            auto ja = ka.mono.powers.begin(), fa = ka.mono.powers.end();
            auto jb = kb.mono.powers.begin(), fb = kb.mono.powers.end();
            while (ja != fa || jb != fb) {
                if (jb == fb || (ja != fa && ja->first < jb->first)) {
                    k.mono.powers.push_back(*ja++);
                } else if (ja == fa || jb->first < ja->first) {
                    k.mono.powers.push_back(*jb++);
                } else {
                    k.mono.powers.emplace_back(ja->first, ja->second + jb->second);
                    ++ja, ++jb;
                }
            }
            add_into(out, k, ca * cb);
        }
    }
    return out;
}

TermMap add_maps(const TermMap& a, const TermMap& b) {
    TermMap out = a;
    for (const auto& [k, c] : b) add_into(out, k, c);
    return out;
}

TermMap negate_map(TermMap m) {
    for (auto& [k, c] : m) c = -c;
    return m;
}

TermMap d_map(const TermMap& m, int v) {
    TermMap out;
    for (const auto& [k, c] : m) {
        int p = mono_power(k.mono, v);
        if (p > 0) {
            TermKey k2 = k;
            auto& pw = k2.mono.powers;
            auto it = std::find_if(pw.begin(), pw.end(),
                                   [v](const auto& e) { return e.first == v; });
            if (p == 1)
                pw.erase(it);
            else
                it->second = p - 1;
            add_into(out, k2, c * p);
        }
        Rational a = atom_multiplier(k.atom, v);
        if (a != 0) add_into(out, k, c * a);
    }
    return out;
}

double eval_map(const TermMap& m, const std::vector<double>& pt) {
    double total = 0.0;
    for (const auto& [k, c] : m) {
        double t = c.convert_to<double>();
        for (const auto& [v, p] : k.mono.powers)
            t *= std::pow(pt[static_cast<size_t>(v)], p);
        double arg = 0.0;
        for (const auto& [v, a] : k.atom.entries)
            arg += a.convert_to<double>() * pt[static_cast<size_t>(v)];
        if (arg != 0.0) t *= std::exp(arg);
        total += t;
    }
    return total;
}

int max_coord_of(const TermMap& m) {
    int mx = -1;
    for (const auto& [k, c] : m) {
        (void)c;
        for (const auto& [v, p] : k.mono.powers) {
            (void)p;
            mx = std::max(mx, v);
        }
        for (const auto& [v, a] : k.atom.entries) {
            (void)a;
            mx = std::max(mx, v);
        }
    }
    return mx;
}

} // namespace

Coords::Coords(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!valid_identifier(n))
            throw std::invalid_argument("invalid coordinate name '" + n + "'");
        if (n == "exp")
            throw std::invalid_argument("'exp' is reserved and cannot name a coordinate");
        if (!seen.insert(n).second)
            throw std::invalid_argument("duplicate coordinate name '" + n + "'");
    }
}

int Coords::index_of(std::string_view name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

int compare(const TermKey& a, const TermKey& b) {
    const size_t na = a.atom.entries.size(), nb = b.atom.entries.size();
    for (size_t i = 0; i < std::min(na, nb); ++i) {
        const auto& [va, ma] = a.atom.entries[i];
        const auto& [vb, mb] = b.atom.entries[i];
        if (va != vb) return va < vb ? -1 : 1;
        if (ma != mb) return ma < mb ? -1 : 1;
    }
    if (na != nb) return na < nb ? -1 : 1;
    const size_t pa = a.mono.powers.size(), pb = b.mono.powers.size();
    for (size_t i = 0; i < std::min(pa, pb); ++i) {
        const auto& [va, qa] = a.mono.powers[i];
        const auto& [vb, qb] = b.mono.powers[i];
        if (va != vb) return va < vb ? -1 : 1;
        if (qa != qb) return qa < qb ? -1 : 1;
    }
    if (pa != pb) return pa < pb ? -1 : 1;
    return 0;
}

ParseError::ParseError(const std::string& msg, size_t pos)
    : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}

TermMap Expr::unit_den() {
    TermMap m;
    m.emplace(TermKey{}, Rational(1));
    return m;
}

Expr Expr::from_int(long long v) { return from_rational(Rational(v)); }

Expr Expr::from_rational(Rational v) {
    Expr e;
    if (v != 0) e.num_.emplace(TermKey{}, std::move(v));
    return e;
}

Expr Expr::coordinate(int id) {
    Expr e;
    TermKey k;
    k.mono.powers.emplace_back(id, 1);
    e.num_.emplace(std::move(k), Rational(1));
    return e;
}

Expr Expr::exp_linear(std::vector<std::pair<int, Rational>> arg) {
    std::sort(arg.begin(), arg.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    TermKey k;
    for (auto& [v, m] : arg) {
        if (m == 0) continue;
        if (!k.atom.entries.empty() && k.atom.entries.back().first == v)
            throw std::invalid_argument("duplicate coordinate in exp argument");
        k.atom.entries.emplace_back(v, std::move(m));
    }
    Expr e;
    e.num_.emplace(std::move(k), Rational(1));
    return e;
}

Expr Expr::from_parts(TermMap num, TermMap den) {
    Expr e;
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    e.normalize();
    return e;
}

void Expr::normalize() {
    std::erase_if(num_, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(den_, [](const auto& kv) { return kv.second == 0; });
    if (den_.empty()) throw DivisionByZero("denominator is identically zero");
    if (num_.empty()) {
        den_ = unit_den();
        return;
    }

    // shift exp content so every coordinate's minimum multiplier over the
    // denominator terms is zero (absent counts as zero)
    std::set<int> den_coords;
    for (const auto& [k, c] : den_) {
        (void)c;
        for (const auto& [v, m] : k.atom.entries) {
            (void)m;
            den_coords.insert(v);
        }
    }
    std::vector<std::pair<int, Rational>> shift;
    for (int v : den_coords) {
        Rational m;
        bool first = true;
        for (const auto& [k, c] : den_) {
            (void)c;
            Rational a = atom_multiplier(k.atom, v);
            if (first || a < m) m = a;
            first = false;
        }
        if (m != 0) shift.emplace_back(v, m);
    }
    if (!shift.empty()) {
        auto apply = [&](const TermMap& src) {
            TermMap out;
            for (const auto& [k, c] : src) {
                TermKey k2 = k;
                for (const auto& [v, m] : shift) {
                    auto& es = k2.atom.entries;
                    auto it = std::find_if(es.begin(), es.end(),
                                           [v = v](const auto& e) { return e.first == v; });
                    if (it == es.end()) {
                        es.emplace_back(v, -m);
                        std::sort(es.begin(), es.end(), [](const auto& l, const auto& r) {
                            return l.first < r.first;
                        });
                    } else if (it->second == m) {
                        es.erase(it);
                    } else {
                        it->second -= m;
                    }
                }
                out.emplace(std::move(k2), c);
            }
            return out;
        };
        num_ = apply(num_);
        den_ = apply(den_);
    }

    // cancel the monomial gcd common to every term of num and den
    std::set<int> mono_coords;
    for (const TermMap* mp : {&num_, &den_})
        for (const auto& [k, c] : *mp) {
            (void)c;
            for (const auto& [v, p] : k.mono.powers) {
                (void)p;
                mono_coords.insert(v);
            }
        }
    std::vector<std::pair<int, int>> mshift;
    for (int v : mono_coords) {
        int m = INT_MAX;
        for (const TermMap* mp : {&num_, &den_})
            for (const auto& [k, c] : *mp) {
                (void)c;
                m = std::min(m, mono_power(k.mono, v));
            }
        if (m > 0) mshift.emplace_back(v, m);
    }
    if (!mshift.empty()) {
        auto apply = [&](const TermMap& src) {
            TermMap out;
            for (const auto& [k, c] : src) {
                TermKey k2 = k;
                for (const auto& [v, m] : mshift) {
                    auto& pw = k2.mono.powers;
                    auto it = std::find_if(pw.begin(), pw.end(),
                                           [v = v](const auto& e) { return e.first == v; });
                    if (it->second == m)
                        pw.erase(it);
                    else
                        it->second -= m;
                }
                out.emplace(std::move(k2), c);
            }
            return out;
        };
        num_ = apply(num_);
        den_ = apply(den_);
    }

    // scale so the denominator's leading (smallest-key) coefficient is 1
    const Rational lead = den_.begin()->second;
    if (lead != 1) {
        for (auto& [k, c] : num_) c /= lead;
        for (auto& [k, c] : den_) c /= lead;
    }
}

bool Expr::is_one() const {
    auto r = as_rational();
    return r && *r == 1;
}

std::optional<Rational> Expr::as_rational() const {
    if (den_ == unit_den()) {
        // distinct exponential-monomial terms are linearly independent, so a
        // polynomial-exp sum is a constant function iff it IS its constant term
        if (num_.empty()) return Rational(0);
        if (num_.size() == 1 && num_.begin()->first == TermKey{}) return num_.begin()->second;
        return std::nullopt;
    }
    // fractions may be constant without the common factor cancelling
    // (best-effort cancellation skips polynomial gcds): constant iff every
    // partial derivative vanishes, and then num = c * den termwise with the
    // denominator's leading coefficient normalized to 1
    const int mx = max_coordinate();
    for (int v = 0; v <= mx; ++v)
        if (!derivative(v).is_zero()) return std::nullopt;
    auto it = num_.find(den_.begin()->first);
    if (it == num_.end()) return std::nullopt;
    return it->second;
}

Expr Expr::operator-() const {
    Expr e = *this;
    e.num_ = negate_map(std::move(e.num_));
    return e;
}

Expr operator+(const Expr& a, const Expr& b) {
    Expr e;
    if (a.den_ == b.den_) {
        e.num_ = add_maps(a.num_, b.num_);
        e.den_ = a.den_;
    } else {
        e.num_ = add_maps(mul_maps(a.num_, b.den_), mul_maps(b.num_, a.den_));
        e.den_ = mul_maps(a.den_, b.den_);
    }
    e.normalize();
    return e;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
    Expr e;
    e.num_ = mul_maps(a.num_, b.num_);
    e.den_ = mul_maps(a.den_, b.den_);
    e.normalize();
    return e;
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw DivisionByZero("division by symbolic zero");
    Expr e;
    e.num_ = mul_maps(a.num_, b.den_);
    e.den_ = mul_maps(a.den_, b.num_);
    e.normalize();
    return e;
}

Expr Expr::pow(long long e) const {
    if (e == 0) return from_int(1);
    Expr base = *this;
    if (e < 0) {
        if (is_zero()) throw DivisionByZero("negative power of symbolic zero");
        base = from_parts(den_, num_);
        e = -e;
    }
    Expr acc = from_int(1);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Expr Expr::derivative(int coord) const {
    if (den_ == unit_den()) {
        Expr e;
        e.num_ = d_map(num_, coord);
        e.normalize();
        return e;
    }
    Expr e;
    e.num_ = add_maps(mul_maps(d_map(num_, coord), den_),
                      negate_map(mul_maps(num_, d_map(den_, coord))));
    e.den_ = mul_maps(den_, den_);
    e.normalize();
    return e;
}

int Expr::max_coordinate() const {
    return std::max(max_coord_of(num_), max_coord_of(den_));
}

double Expr::evaluate(const std::vector<double>& point) const {
    const int mx = max_coordinate();
    if (mx >= static_cast<int>(point.size()))
        throw EvalError("coordinate #" + std::to_string(mx) + " unassigned at evaluation point");
    const double d = eval_map(den_, point);
    if (d == 0.0) throw EvalError("denominator evaluates to zero at point");
    return eval_map(num_, point) / d;
}

bool operator==(const Expr& a, const Expr& b) {
    // cross-multiplied difference: a/b == c/d iff ad - cb == 0
    TermMap diff = add_maps(mul_maps(a.num_, b.den_), negate_map(mul_maps(b.num_, a.den_)));
    std::erase_if(diff, [](const auto& kv) { return kv.second == 0; });
    return diff.empty();
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

namespace {

std::string atom_str(const ExpAtom& a, const Coords& coords) {
    std::string out = "exp(";
    bool first = true;
    for (const auto& [v, m] : a.entries) {
        Rational mag = m < 0 ? Rational(-m) : m;
        if (first) {
            if (m < 0) out += "-";
        } else {
            out += m < 0 ? " - " : " + ";
        }
        if (mag != 1) out += rational_str(mag) + "*";
        out += coords.name(v);
        first = false;
    }
    out += ")";
    return out;
}

std::string term_str(const Rational& coeff_mag, const TermKey& k, const Coords& coords) {
    std::vector<std::string> factors;
    for (const auto& [v, p] : k.mono.powers) {
        std::string f = coords.name(v);
        if (p != 1) f += "^" + std::to_string(p);
        factors.push_back(std::move(f));
    }
    if (!k.atom.entries.empty()) factors.push_back(atom_str(k.atom, coords));
    std::string out;
    if (factors.empty()) return rational_str(coeff_mag);
    if (coeff_mag != 1) out = rational_str(coeff_mag) + "*";
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out += "*";
        out += factors[i];
    }
    return out;
}

std::string sum_str(const TermMap& m, const Coords& coords) {
    std::string out;
    bool first = true;
    for (const auto& [k, c] : m) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        out += term_str(mag, k, coords);
        first = false;
    }
    return out;
}

} // namespace

std::string Expr::str(const Coords& coords) const {
    if (num_.empty()) return "0";
    if (den_ == unit_den()) return sum_str(num_, coords);
    return "(" + sum_str(num_, coords) + ")/(" + sum_str(den_, coords) + ")";
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Token {
    enum Kind { Int, Sym, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::string text;
    size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= src_.size()) {
            tok_.kind = Token::End;
            tok_.text.clear();
            return;
        }
        const char ch = src_[i_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i_;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            tok_.kind = Token::Int;
            tok_.text = std::string(src_.substr(i_, j - i_));
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = i_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                ++j;
            tok_.kind = Token::Sym;
            tok_.text = std::string(src_.substr(i_, j - i_));
            i_ = j;
            return;
        }
        switch (ch) {
        case '+': tok_.kind = Token::Plus; break;
        case '-': tok_.kind = Token::Minus; break;
        case '*': tok_.kind = Token::Star; break;
        case '/': tok_.kind = Token::Slash; break;
        case '^': tok_.kind = Token::Caret; break;
        case '(': tok_.kind = Token::LParen; break;
        case ')': tok_.kind = Token::RParen; break;
        default:
            throw ParseError(std::string("unexpected character '") + ch + "'", i_);
        }
        tok_.text = std::string(1, ch);
        ++i_;
    }

    std::string_view src_;
    size_t i_ = 0;
    Token tok_;
};

class Parser {
public:
    Parser(std::string_view src, const Coords& coords) : lex_(src), coords_(coords) {}

    Expr run() {
        Expr e = parse_expr();
        if (lex_.peek().kind != Token::End)
            throw ParseError("unexpected trailing input", lex_.peek().pos);
        return e;
    }

private:
    Expr parse_expr() {
        Expr e = parse_term();
        while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
            Token op = lex_.next();
            Expr rhs = parse_term();
            e = op.kind == Token::Plus ? e + rhs : e - rhs;
        }
        return e;
    }

    Expr parse_term() {
        Expr e = parse_unary();
        while (lex_.peek().kind == Token::Star || lex_.peek().kind == Token::Slash) {
            Token op = lex_.next();
            Expr rhs = parse_unary();
            e = op.kind == Token::Star ? e * rhs : e / rhs;
        }
        return e;
    }

    Expr parse_unary() {
        bool neg = false;
        while (lex_.peek().kind == Token::Minus || lex_.peek().kind == Token::Plus) {
            if (lex_.next().kind == Token::Minus) neg = !neg;
        }
        Expr e = parse_power();
        return neg ? -e : e;
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (lex_.peek().kind == Token::Caret) {
            lex_.next();
            return base.pow(parse_exponent());
        }
        return base;
    }

    long long parse_exponent() {
        bool paren = false;
        if (lex_.peek().kind == Token::LParen) {
            paren = true;
            lex_.next();
        }
        bool neg = false;
        if (lex_.peek().kind == Token::Minus) {
            neg = true;
            lex_.next();
        }
        Token t = lex_.peek();
        if (t.kind != Token::Int)
            throw ParseError("exponent must be an integer literal", t.pos);
        lex_.next();
        long long v;
        try {
            v = std::stoll(t.text);
        } catch (const std::exception&) {
            throw ParseError("exponent out of range", t.pos);
        }
        if (paren) {
            if (lex_.peek().kind != Token::RParen)
                throw ParseError("expected ')'", lex_.peek().pos);
            lex_.next();
        }
        return neg ? -v : v;
    }

    Expr parse_primary() {
        Token t = lex_.peek();
        switch (t.kind) {
        case Token::Int:
            lex_.next();
            return Expr::from_rational(Rational(t.text));
        case Token::LParen: {
            lex_.next();
            Expr e = parse_expr();
            if (lex_.peek().kind != Token::RParen)
                throw ParseError("expected ')'", lex_.peek().pos);
            lex_.next();
            return e;
        }
        case Token::Sym: {
            lex_.next();
            if (t.text == "exp") return parse_exp_call(t.pos);
            int id = coords_.index_of(t.text);
            if (id < 0) throw ParseError("unknown symbol '" + t.text + "'", t.pos);
            return Expr::coordinate(id);
        }
        default:
            throw ParseError("expected a number, symbol, or '('", t.pos);
        }
    }

    Expr parse_exp_call(size_t call_pos) {
        if (lex_.peek().kind != Token::LParen)
            throw ParseError("expected '(' after exp", lex_.peek().pos);
        lex_.next();
        Expr arg = parse_expr();
        if (lex_.peek().kind != Token::RParen)
            throw ParseError("expected ')'", lex_.peek().pos);
        lex_.next();
        // argument must be a rational linear form in the coordinates
        std::vector<std::pair<int, Rational>> entries;
        if (!(arg.denominator() == Expr::from_int(1).denominator()))
            throw ParseError("exp argument must be linear in the coordinates", call_pos);
        for (const auto& [k, c] : arg.numerator()) {
            if (!k.atom.entries.empty() || k.mono.powers.size() != 1 ||
                k.mono.powers[0].second != 1)
                throw ParseError("exp argument must be a rational linear combination of "
                                 "coordinates with no constant term",
                                 call_pos);
            entries.emplace_back(k.mono.powers[0].first, c);
        }
        return Expr::exp_linear(std::move(entries));
    }

    Lexer lex_;
    const Coords& coords_;
};

} // namespace

Expr parse(std::string_view text, const Coords& coords) {
    return Parser(text, coords).run();
}

} // namespace tsgeo::sym
