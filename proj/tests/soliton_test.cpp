#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "tsgeo/fixture.hpp"
#include "tsgeo/soliton.hpp"

#include <random>

using namespace tsgeo;
using namespace tsgeo::geom;
using test::E;

namespace {

struct Workbench {
    explicit Workbench(const ExampleData& ex)
        : m(ex.manifold), conn(Connection::levi_civita(m)),
          cs(ContactStructure::attach(m, conn, ex.phi, ex.xi)),
          cd(CurvatureData::compute(conn)) {}
    FrameManifold m;
    Connection conn;
    ContactStructure cs;
    CurvatureData cd;
};

} // namespace

TEST_CASE("Lie derivative of g along xi on the example") {
    Workbench w{make_example()};
    auto h = lie_derivative_metric(w.conn, w.cs.xi());
    CHECK(h[0][0] == E("-2"));
    CHECK(h[1][1] == E("-2"));
    CHECK(h[2][2].is_zero());
    CHECK(h[0][1].is_zero());
    CHECK(h[0][2].is_zero());
    CHECK(h[1][2].is_zero());
}

TEST_CASE("Lie derivative along the zero field vanishes") {
    Workbench w{make_example()};
    auto h = lie_derivative_metric(w.conn, w.m.zero_field());
    for (const auto& row : h)
        for (const auto& entry : row) CHECK(entry.is_zero());
}

TEST_CASE("L_xi g equals 2 beta (g + eta x eta), not the minus form") {
    Workbench w{make_example()};
    auto rep = extract_trans_sasakian(w.cs);
    auto h = lie_derivative_metric(w.conn, w.cs.xi());
    const Expr two_beta = E("2") * rep.beta;
    bool plus_matches = true, minus_matches = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Expr eiej = w.cs.eta()[size_t(i)] * w.cs.eta()[size_t(j)];
            Expr plus = two_beta * (w.m.metric()[size_t(i)][size_t(j)] + eiej);
            Expr minus = two_beta * (w.m.metric()[size_t(i)][size_t(j)] - eiej);
            plus_matches = plus_matches && (h[size_t(i)][size_t(j)] - plus).is_zero();
            minus_matches = minus_matches && (h[size_t(i)][size_t(j)] - minus).is_zero();
        }
    CHECK(plus_matches);
    CHECK_FALSE(minus_matches);
}

TEST_CASE("second Lie derivative of g along xi on the example") {
    Workbench w{make_example()};
    auto h2 = second_lie_derivative_metric(w.conn, w.cs.xi());
    CHECK(h2[0][0] == E("4"));
    CHECK(h2[1][1] == E("4"));
    CHECK(h2[2][2].is_zero());
    CHECK(h2[0][1].is_zero()); // h is diagonal and brackets preserve directions
}

TEST_CASE("second Lie derivative of the zero field vanishes") {
    Workbench w{make_example()};
    auto h2 = second_lie_derivative_metric(w.conn, w.m.zero_field());
    for (const auto& row : h2)
        for (const auto& entry : row) CHECK(entry.is_zero());
}

TEST_CASE("hyperbolic soliton on the example: lambda = 1, mu = 2, expanding") {
    Workbench w{make_example()};
    SolitonProblem prob{&w.cd, w.cs.xi(), w.cs.eta(), SolitonKind::hyperbolic, std::nullopt};
    auto sol = solve_soliton(prob);
    REQUIRE(sol.status == SolveStatus::unique);
    CHECK(*sol.lambda == sym::Rational(1));
    CHECK(*sol.mu == sym::Rational(2));
    CHECK(sol.classification == Regime::expanding);
    CHECK(sol.residuals_vanish);
    CHECK(sol.residuals.empty());
    // the example is Einstein: S = 2g
    CHECK(sol.eta_fit.exact);
    CHECK(sol.eta_fit.a == E("2"));
    CHECK(sol.eta_fit.b.is_zero());
}

TEST_CASE("V = 0 on the Einstein example: underdetermined with mu = 2") {
    Workbench w{make_example()};
    SolitonProblem prob{&w.cd, w.m.zero_field(), w.cs.eta(), SolitonKind::hyperbolic,
                        std::nullopt};
    auto sol = solve_soliton(prob);
    REQUIRE(sol.status == SolveStatus::underdetermined);
    REQUIRE(sol.mu.has_value());
    CHECK(*sol.mu == sym::Rational(2));
    CHECK_FALSE(sol.lambda.has_value());
    REQUIRE(sol.null_direction.has_value());
    CHECK(sol.null_direction->first == sym::Rational(1));
    CHECK(sol.null_direction->second == sym::Rational(0));
    CHECK(sol.classification == Regime::not_applicable);
}

TEST_CASE("conformal soliton with p = 1 on the example: mu = 17/6, lambda = 1") {
    Workbench w{make_example()};
    SolitonProblem prob{&w.cd, w.cs.xi(), w.cs.eta(), SolitonKind::conformal, sym::Rational(1)};
    auto sol = solve_soliton(prob);
    REQUIRE(sol.status == SolveStatus::unique);
    CHECK(*sol.lambda == sym::Rational(1));
    CHECK(*sol.mu == sym::Rational(17, 6));
    CHECK(sol.residuals_vanish);
}

TEST_CASE("conformal kind requires a pressure, hyperbolic forbids it") {
    Workbench w{make_example()};
    SolitonProblem bad{&w.cd, w.cs.xi(), w.cs.eta(), SolitonKind::conformal, std::nullopt};
    CHECK_THROWS_AS(solve_soliton(bad), std::invalid_argument);
    SolitonProblem bad2{&w.cd, w.cs.xi(), w.cs.eta(), SolitonKind::hyperbolic, sym::Rational(1)};
    CHECK_THROWS_AS(solve_soliton(bad2), std::invalid_argument);
}

TEST_CASE("non-constant coefficients are refused with an explicit status") {
    Workbench w{make_example()};
    // V = x e1 makes the lambda-coefficients depend on x
    Field v = {E("x"), E("0"), E("0")};
    SolitonProblem prob{&w.cd, v, w.cs.eta(), SolitonKind::hyperbolic, std::nullopt};
    auto sol = solve_soliton(prob);
    CHECK(sol.status == SolveStatus::non_constant_coefficients);
}

TEST_CASE("theorem thresholds on the example data") {
    // (alpha, beta, n) = (0, -1, 1), mu = 2
    auto rep = theorem_thresholds(0, -1, 1, 2, std::nullopt, SolitonKind::hyperbolic);
    CHECK(rep.lambda_formula == sym::Rational(1, 2));
    CHECK(rep.threshold == sym::Rational(4));
    // mu = 2 < 4: printed direction says shrinking even though lambda > 0
    CHECK(rep.regime_printed_direction == Regime::shrinking);
    CHECK(rep.regime_lambda_sign == Regime::expanding);
}

TEST_CASE("beta = 0 violates the theorem hypothesis") {
    CHECK_THROWS_AS(theorem_thresholds(1, 0, 1, 2, std::nullopt, SolitonKind::hyperbolic),
                    BetaIsZero);
}

TEST_CASE("mu exactly at the threshold is steady") {
    // threshold for (0,-1,n=1) is 4
    auto rep = theorem_thresholds(0, -1, 1, 4, std::nullopt, SolitonKind::hyperbolic);
    CHECK(rep.regime_printed_direction == Regime::steady);
    // at the threshold the closed-form lambda is zero as well
    CHECK(rep.lambda_formula == sym::Rational(0));
    CHECK(rep.regime_lambda_sign == Regime::steady);
}

TEST_CASE("property: lambda sign matches the beta-corrected threshold direction") {
    std::mt19937 rng(61);
    std::uniform_int_distribution<int> num(-8, 8), den(1, 4), npick(1, 4);
    for (int t = 0; t < 200; ++t) {
        sym::Rational alpha(num(rng), den(rng));
        sym::Rational beta(num(rng), den(rng));
        if (beta == 0) continue;
        sym::Rational mu(num(rng), den(rng));
        long n = npick(rng);
        bool conformal = t % 2 == 0;
        std::optional<sym::Rational> p;
        if (conformal) p = sym::Rational(num(rng), den(rng));
        auto rep = theorem_thresholds(alpha, beta, n, mu,
                                      p, conformal ? SolitonKind::conformal
                                                   : SolitonKind::hyperbolic);
        // re-derived direction: lambda > 0 iff (mu - threshold) and beta share sign
        sym::Rational excess = mu - rep.threshold;
        Regime derived = excess == 0 ? Regime::steady
                         : ((excess > 0) == (beta > 0)) ? Regime::expanding
                                                        : Regime::shrinking;
        CHECK(derived == rep.regime_lambda_sign);
        if (beta > 0) CHECK(rep.regime_printed_direction == rep.regime_lambda_sign);
    }
}

TEST_CASE("eta-Einstein fit examples") {
    Workbench w{make_example()};
    ExprMatrix ric(3, std::vector<Expr>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ric[size_t(i)][size_t(j)] = w.cd.ricci(i, j);
    auto fit = eta_einstein_fit(ric, w.m.metric(), w.cs.eta(), w.m);
    CHECK(fit.exact);
    CHECK(fit.a == E("2"));
    CHECK(fit.b.is_zero());

    ExprMatrix zero(3, std::vector<Expr>(3));
    auto fit0 = eta_einstein_fit(zero, w.m.metric(), w.cs.eta(), w.m);
    CHECK(fit0.exact);
    CHECK(fit0.a.is_zero());
    CHECK(fit0.b.is_zero());
}

TEST_CASE("eta-Einstein fit flags the phi-term of the contracted model") {
    Workbench w{make_example()};
    // model Ricci with alpha*beta != 0 keeps a 2 a b g(Y, phi Z) term that no
    // (a g + b eta x eta) can absorb
    auto model = space_form_model(w.cs, E("1"), E("1"), E("2"));
    auto ric = contract_model_ricci(w.cs, model);
    auto fit = eta_einstein_fit(ric, w.m.metric(), w.cs.eta(), w.m);
    CHECK_FALSE(fit.exact);
    bool offdiag = false;
    for (const auto& r : fit.residuals)
        if (r.where.find("(e1,e2)") != std::string::npos) offdiag = true;
    CHECK(offdiag);
}

TEST_CASE("property: first Lie derivative is linear in V") {
    Workbench w{make_example()};
    std::mt19937 rng(67);
    std::uniform_int_distribution<int> pick(-3, 3);
    for (int t = 0; t < 10; ++t) {
        Field v = {E(std::to_string(pick(rng))), E(std::to_string(pick(rng))),
                   E(std::to_string(pick(rng)))};
        Field u = {E("exp(z)"), E("0"), E(std::to_string(pick(rng)))};
        Expr a = E("2"), b = E("-1/2");
        auto lhs = lie_derivative_metric(w.conn, add_fields(scale_field(a, v), scale_field(b, u)));
        auto hv = lie_derivative_metric(w.conn, v);
        auto hu = lie_derivative_metric(w.conn, u);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK((lhs[size_t(i)][size_t(j)] - a * hv[size_t(i)][size_t(j)] -
                       b * hu[size_t(i)][size_t(j)])
                          .is_zero());
    }
}

TEST_CASE("xi is not a Killing field on the example") {
    Workbench w{make_example()};
    auto h = lie_derivative_metric(w.conn, w.cs.xi());
    CHECK(h[0][0] == E("-2")); // nonzero: not Killing
    bool any_nonzero = false;
    for (const auto& row : h)
        for (const auto& entry : row) any_nonzero = any_nonzero || !entry.is_zero();
    CHECK(any_nonzero);
}

TEST_CASE("property: second Lie derivative is quadratically homogeneous") {
    Workbench w{make_example()};
    for (const char* s : {"2", "-3", "1/2"}) {
        Field sv = scale_field(E(s), w.cs.xi());
        auto h2s = second_lie_derivative_metric(w.conn, sv);
        auto h2 = second_lie_derivative_metric(w.conn, w.cs.xi());
        Expr s2 = E(s) * E(s);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK((h2s[size_t(i)][size_t(j)] - s2 * h2[size_t(i)][size_t(j)]).is_zero());
    }
}

TEST_CASE("property: substitution soundness on random homogeneous structures") {
    std::mt19937 rng(71);
    const char* pool[] = {"1", "2", "3", "1/2", "-1", "-2"};
    std::uniform_int_distribution<size_t> pick(0, 5);
    int unique_count = 0;
    for (int t = 0; t < 10; ++t) {
        std::string a = pool[pick(rng)];
        std::string b = t % 2 == 0 ? a : pool[pick(rng)];
        std::string p = pool[pick(rng)], q = pool[pick(rng)];
        auto m = test::homogeneous_manifold(a, b, p, q, "-1");
        auto conn = Connection::levi_civita(m);
        auto cd = CurvatureData::compute(conn);
        Field v = m.frame_field(2);
        SolitonProblem prob{&cd, v, {}, SolitonKind::hyperbolic, std::nullopt};
        auto sol = solve_soliton(prob);
        if (sol.status == SolveStatus::unique) {
            ++unique_count;
            CHECK(sol.residuals_vanish);
        }
    }
    CHECK(unique_count > 0);
}
