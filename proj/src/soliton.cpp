#include "tsgeo/soliton.hpp"

namespace tsgeo::geom {

ExprMatrix lie_derivative_metric(const Connection& conn, const Field& v) {
    const FrameManifold& m = conn.manifold();
    const int d = m.dim();
    std::vector<Field> nab(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) nab[size_t(i)] = conn.covariant_derivative(i, v);
    ExprMatrix h(static_cast<size_t>(d), std::vector<Expr>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Expr t = m.pair(nab[size_t(i)], m.frame_field(j)) +
                     m.pair(m.frame_field(i), nab[size_t(j)]);
            h[size_t(i)][size_t(j)] = t;
            h[size_t(j)][size_t(i)] = t;
        }
    return h;
}

ExprMatrix second_lie_derivative_metric(const Connection& conn, const Field& v) {
    const FrameManifold& m = conn.manifold();
    const int d = m.dim();
    const ExprMatrix h = lie_derivative_metric(conn, v);
    auto h_of = [&](const Field& a, const Field& b) {
        Expr t;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                t += a[size_t(i)] * h[size_t(i)][size_t(j)] * b[size_t(j)];
        return t;
    };
    std::vector<Field> br(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) br[size_t(i)] = m.bracket(v, m.frame_field(i));
    ExprMatrix out(static_cast<size_t>(d), std::vector<Expr>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Expr t = m.field_deriv(v, h[size_t(i)][size_t(j)]);
            t -= h_of(br[size_t(i)], m.frame_field(j));
            t -= h_of(m.frame_field(i), br[size_t(j)]);
            out[size_t(i)][size_t(j)] = t;
            out[size_t(j)][size_t(i)] = t;
        }
    return out;
}

std::string to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::unique: return "unique";
    case SolveStatus::underdetermined: return "underdetermined";
    case SolveStatus::inconsistent: return "inconsistent";
    case SolveStatus::non_constant_coefficients: return "non-constant-coefficients";
    }
    return "?";
}

std::string to_string(Regime r) {
    switch (r) {
    case Regime::expanding: return "expanding";
    case Regime::steady: return "steady";
    case Regime::shrinking: return "shrinking";
    case Regime::not_applicable: return "n/a";
    }
    return "?";
}

EtaEinsteinFit eta_einstein_fit(const ExprMatrix& ric, const ExprMatrix& g,
                                const std::vector<Expr>& eta, const FrameManifold& m) {
    const int d = m.dim();
    // rows of the linear system [g_ij, eta_i eta_j | Ric_ij] over i <= j
    struct Row {
        Expr cg, ce, rhs;
        int i, j;
    };
    std::vector<Row> rows;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            rows.push_back({g[size_t(i)][size_t(j)], eta[size_t(i)] * eta[size_t(j)],
                            ric[size_t(i)][size_t(j)], i, j});

    // greedy pivot: first row with a nonzero g-coefficient, then a second row
    // that stays independent after elimination
    EtaEinsteinFit fit;
    Expr a, b;
    const Row* r1 = nullptr;
    for (const auto& r : rows)
        if (!r.cg.is_zero()) {
            r1 = &r;
            break;
        }
    if (r1) {
        const Row* r2 = nullptr;
        Expr det;
        for (const auto& r : rows) {
            det = r1->cg * r.ce - r.cg * r1->ce;
            if (!det.is_zero()) {
                r2 = &r;
                break;
            }
        }
        if (r2) {
            det = r1->cg * r2->ce - r2->cg * r1->ce;
            a = (r1->rhs * r2->ce - r2->rhs * r1->ce) / det;
            b = (r1->cg * r2->rhs - r2->cg * r1->rhs) / det;
        } else {
            a = r1->rhs / r1->cg; // eta-column dependent; set b = 0
        }
    } else {
        // g has a nonzero diagonal, so this only happens for d = 0 inputs
        for (const auto& r : rows)
            if (!r.ce.is_zero()) {
                b = r.rhs / r.ce;
                break;
            }
    }
    fit.a = a;
    fit.b = b;
    fit.a_constant = a.is_constant();
    fit.b_constant = b.is_constant();
    fit.exact = true;
    for (const auto& r : rows) {
        Expr residual = r.rhs - a * r.cg - b * r.ce;
        if (!residual.is_zero()) {
            fit.exact = false;
            fit.residuals.push_back({"at (e" + std::to_string(r.i + 1) + ",e" +
                                         std::to_string(r.j + 1) + ")",
                                     residual.str(m.coords())});
        }
    }
    return fit;
}

SolitonSolution solve_soliton(const SolitonProblem& problem) {
    const CurvatureData& cd = *problem.cd;
    const FrameManifold& m = cd.manifold();
    const Connection& conn = cd.connection();
    const int d = m.dim();
    if ((problem.kind == SolitonKind::conformal) != problem.pressure.has_value())
        throw std::invalid_argument("pressure must be given exactly for the conformal kind");

    const ExprMatrix h = lie_derivative_metric(conn, problem.v);
    const ExprMatrix h2 = second_lie_derivative_metric(conn, problem.v);
    const Rational offset = problem.kind == SolitonKind::conformal
                                ? *problem.pressure + Rational(2, d)
                                : Rational(0);

    SolitonSolution sol;

    ExprMatrix ric(static_cast<size_t>(d), std::vector<Expr>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) ric[size_t(i)][size_t(j)] = cd.ricci(i, j);
    std::vector<Expr> eta = problem.eta;
    if (eta.empty()) eta.assign(static_cast<size_t>(d), Expr());
    sol.eta_fit = eta_einstein_fit(ric, m.metric(), eta, m);

    // rows: 2 h_ij * lambda - 2 g_ij * mu = -(h2_ij + 2 Ric_ij + offset g_ij)
    struct Row {
        Rational cl, cm, rhs;
        int i, j;
    };
    std::vector<Row> rows;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Expr cl = Expr::from_int(2) * h[size_t(i)][size_t(j)];
            Expr cm = Expr::from_int(-2) * m.metric()[size_t(i)][size_t(j)];
            Expr rhs = -(h2[size_t(i)][size_t(j)] + Expr::from_int(2) * cd.ricci(i, j) +
                         Expr::from_rational(offset) * m.metric()[size_t(i)][size_t(j)]);
            auto rl = cl.as_rational(), rm = cm.as_rational(), rr = rhs.as_rational();
            if (!rl || !rm || !rr) {
                sol.status = SolveStatus::non_constant_coefficients;
                return sol;
            }
            rows.push_back({*rl, *rm, *rr, i, j});
        }

    // exact RREF on the 2-column system
    auto find_pivot = [&](size_t from, int col) -> long {
        for (size_t r = from; r < rows.size(); ++r) {
            const Rational& v = col == 0 ? rows[r].cl : rows[r].cm;
            if (v != 0) return static_cast<long>(r);
        }
        return -1;
    };
    size_t rank = 0;
    int pivot_col[2] = {-1, -1};
    for (int col = 0; col < 2 && rank < rows.size(); ++col) {
        long p = find_pivot(rank, col);
        if (p < 0) continue;
        std::swap(rows[rank], rows[size_t(p)]);
        Rational pv = col == 0 ? rows[rank].cl : rows[rank].cm;
        rows[rank].cl /= pv;
        rows[rank].cm /= pv;
        rows[rank].rhs /= pv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            Rational f = col == 0 ? rows[r].cl : rows[r].cm;
            if (f == 0) continue;
            rows[r].cl -= f * rows[rank].cl;
            rows[r].cm -= f * rows[rank].cm;
            rows[r].rhs -= f * rows[rank].rhs;
        }
        pivot_col[rank] = col;
        ++rank;
    }
    bool consistent = true;
    for (size_t r = rank; r < rows.size(); ++r)
        if (rows[r].rhs != 0) consistent = false;

    if (!consistent) {
        sol.status = SolveStatus::inconsistent;
        return sol;
    }
    if (rank == 2) {
        sol.status = SolveStatus::unique;
        sol.lambda = rows[0].rhs;
        sol.mu = rows[1].rhs;
    } else {
        sol.status = SolveStatus::underdetermined;
        if (rank == 1) {
            if (pivot_col[0] == 0) {
                if (rows[0].cm == 0) {
                    sol.lambda = rows[0].rhs; // lambda pinned, mu free
                    sol.null_direction = {{Rational(0), Rational(1)}};
                } else {
                    // only the combination lambda + cm*mu is pinned
                    sol.null_direction = {{-rows[0].cm, Rational(1)}};
                }
            } else {
                sol.mu = rows[0].rhs; // mu pinned, lambda free
                sol.null_direction = {{Rational(1), Rational(0)}};
            }
        } else {
            sol.null_direction = std::nullopt; // doubly degenerate
        }
    }

    // substitute and report residuals when both constants are pinned
    if (sol.status == SolveStatus::unique) {
        const Expr lam = Expr::from_rational(*sol.lambda);
        const Expr mu = Expr::from_rational(*sol.mu);
        sol.residuals_vanish = true;
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                Expr residual = h2[size_t(i)][size_t(j)] +
                                Expr::from_int(2) * lam * h[size_t(i)][size_t(j)] +
                                Expr::from_int(2) * cd.ricci(i, j) -
                                (Expr::from_int(2) * mu - Expr::from_rational(offset)) *
                                    m.metric()[size_t(i)][size_t(j)];
                if (!residual.is_zero()) {
                    sol.residuals_vanish = false;
                    sol.residuals.push_back({"at (e" + std::to_string(i + 1) + ",e" +
                                                 std::to_string(j + 1) + ")",
                                             residual.str(m.coords())});
                }
            }
        if (*sol.lambda > 0)
            sol.classification = Regime::expanding;
        else if (*sol.lambda == 0)
            sol.classification = Regime::steady;
        else
            sol.classification = Regime::shrinking;
    }
    return sol;
}

ThresholdReport theorem_thresholds(const Rational& alpha, const Rational& beta, long n,
                                   const Rational& mu, std::optional<Rational> pressure,
                                   SolitonKind kind) {
    if (beta == 0) throw BetaIsZero("the classification theorems require beta != 0");
    Rational mu_eff = mu;
    Rational threshold = 2 * (Rational(n + 1) * beta * beta - Rational(n - 1) * alpha * alpha);
    if (kind == SolitonKind::conformal) {
        if (!pressure) throw std::invalid_argument("conformal kind needs a pressure");
        const Rational conf = Rational(1, 2) * (*pressure + Rational(2, 2 * n + 1));
        mu_eff -= conf;
        threshold += conf;
    }
    ThresholdReport rep;
    rep.lambda_formula =
        (2 * Rational(n - 1) * (alpha * alpha - beta * beta) + mu_eff) / (4 * beta) - beta;
    rep.threshold = threshold;
    rep.regime_printed_direction = mu > threshold   ? Regime::expanding
                                   : mu == threshold ? Regime::steady
                                                     : Regime::shrinking;
    rep.regime_lambda_sign = rep.lambda_formula > 0   ? Regime::expanding
                             : rep.lambda_formula == 0 ? Regime::steady
                                                       : Regime::shrinking;
    return rep;
}

} // namespace tsgeo::geom
