#ifndef TSGEO_SOLITON_HPP
#define TSGEO_SOLITON_HPP

#include "tsgeo/curvature.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsgeo::geom {

/// (L_V g)(e_i, e_j) = g(nabla_{e_i} V, e_j) + g(e_i, nabla_{e_j} V), exact.
ExprMatrix lie_derivative_metric(const Connection& conn, const Field& v);

/// (L_V (L_V g))(e_i, e_j) with the first Lie derivative expanded through
/// field brackets: V(h(e_i,e_j)) - h([V,e_i],e_j) - h(e_i,[V,e_j]).
ExprMatrix second_lie_derivative_metric(const Connection& conn, const Field& v);

enum class SolitonKind { hyperbolic, conformal };
enum class SolveStatus { unique, underdetermined, inconsistent, non_constant_coefficients };
enum class Regime { expanding, steady, shrinking, not_applicable };

std::string to_string(SolveStatus s);
std::string to_string(Regime r);

struct SolitonProblem {
    const CurvatureData* cd = nullptr; // carries manifold and connection
    Field v;
    std::vector<Expr> eta; // eta(e_i), for the eta-Einstein fit; empty = pure Einstein fit
    SolitonKind kind = SolitonKind::hyperbolic;
    std::optional<Rational> pressure; // required iff conformal
};

struct EtaEinsteinFit {
    Expr a, b; // Ric ~ a g + b eta (x) eta
    bool a_constant = false;
    bool b_constant = false;
    bool exact = false; // every residual vanishes
    std::vector<ResidualEntry> residuals;
};

/// Exact linear solve of Ric = a g + b eta(x)eta over the frame pairs
/// (Gaussian elimination over the expression field, deterministic pivoting),
/// with the residual of every pair reported.
EtaEinsteinFit eta_einstein_fit(const ExprMatrix& ric, const ExprMatrix& g,
                                const std::vector<Expr>& eta, const FrameManifold& m);

struct SolitonSolution {
    SolveStatus status = SolveStatus::inconsistent;
    std::optional<Rational> lambda;
    std::optional<Rational> mu;
    std::optional<std::pair<Rational, Rational>> null_direction; // underdetermined direction
    Regime classification = Regime::not_applicable;
    std::vector<ResidualEntry> residuals; // nonzero residuals after substitution
    bool residuals_vanish = false;
    EtaEinsteinFit eta_fit;
};

/// Solve the soliton equation for global rational constants (lambda, mu):
/// L_V L_V g + 2 lambda L_V g + 2 S = 2 mu g for the hyperbolic kind, with
/// the right side 2(mu - (p + 2/d)/2) g for the conformal kind. Refuses
/// (status non_constant_coefficients) when a per-component coefficient is a
/// non-constant expression.
SolitonSolution solve_soliton(const SolitonProblem& problem);

struct ThresholdReport {
    Rational lambda_formula;
    Rational threshold;
    Regime regime_printed_direction; // expanding iff mu > threshold
    Regime regime_lambda_sign;       // sign of the closed-form lambda
};

struct BetaIsZero : std::runtime_error {
    explicit BetaIsZero(const std::string& msg) : std::runtime_error(msg) {}
};

/// Closed-form lambda and the mu-threshold of the classification theorems,
/// with n from dimension d = 2n+1. Both the printed comparison direction and
/// the sign of the closed-form lambda are returned; they differ when
/// beta < 0. Throws BetaIsZero when beta = 0.
ThresholdReport theorem_thresholds(const Rational& alpha, const Rational& beta, long n,
                                   const Rational& mu, std::optional<Rational> pressure,
                                   SolitonKind kind);

} // namespace tsgeo::geom

#endif
