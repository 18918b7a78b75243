// Acceptance suite: one line per criterion, nonzero exit when any fails.
#include "tsgeo/fixture.hpp"
#include "tsgeo/flow.hpp"
#include "tsgeo/report.hpp"
#include "tsgeo/soliton.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

using namespace tsgeo;
using geom::Connection;
using geom::ContactStructure;
using geom::CurvatureData;
using geom::Expr;
using geom::Field;
using geom::FrameManifold;
using sym::Rational;

namespace {

struct Criterion {
    int number;
    const char* label;
    bool pass;
    double seconds;
    std::string detail;
};

std::vector<Criterion> results;

template <typename F>
void run_criterion(int number, const char* label, double budget_seconds, F&& body) {
    std::ostringstream detail;
    bool pass = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0 && secs > budget_seconds) {
        pass = false;
        detail << " [budget " << budget_seconds << " s exceeded]";
    }
    results.push_back({number, label, pass, secs, detail.str()});
}

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

// published component tables of the example, hard-coded independently of the
// symbolic pipeline (the oracle side of the regression)
struct PublishedFixture {
    // brackets: [e1,e3] = -e1, [e2,e3] = -e2, [e1,e2] = 0
    static int bracket(int i, int j, int k) {
        if (i == 0 && j == 2 && k == 0) return -1;
        if (i == 2 && j == 0 && k == 0) return 1;
        if (i == 1 && j == 2 && k == 1) return -1;
        if (i == 2 && j == 1 && k == 1) return 1;
        return 0;
    }
    static int gamma(int i, int j, int k) {
        if (i == 0 && j == 0 && k == 2) return -1;
        if (i == 0 && j == 2 && k == 0) return -1;
        if (i == 1 && j == 1 && k == 2) return -1;
        if (i == 1 && j == 2 && k == 1) return -1;
        return 0;
    }
    // printed curvature table, R(e_i,e_j)e_k component along e_l, for i < j
    static int riem_upper(int i, int j, int k, int l) {
        if (i == 0 && j == 1) {
            if (k == 0) return l == 1 ? -1 : 0; // R(e1,e2)e1 = -e2
            if (k == 1) return l == 0 ? 1 : 0;  // R(e1,e2)e2 = e1
            return 0;                           // R(e1,e2)e3 = 0
        }
        if (i == 0 && j == 2) {
            if (k == 0) return l == 2 ? -1 : 0; // R(e1,e3)e1 = -e3
            if (k == 1) return 0;               // R(e1,e3)e2 = 0
            return l == 0 ? -1 : 0;             // R(e1,e3)e3 = -e1
        }
        if (i == 1 && j == 2) {
            if (k == 0) return 0;               // R(e2,e3)e1 = 0
            if (k == 1) return l == 2 ? -1 : 0; // R(e2,e3)e2 = -e3
            return l == 1 ? -1 : 0;             // R(e2,e3)e3 = -e2
        }
        return 0;
    }
    static int riem(int i, int j, int k, int l) {
        if (i == j) return 0;
        return i < j ? riem_upper(i, j, k, l) : -riem_upper(j, i, k, l);
    }
};

io::ManifoldInput example_input() { return io::load_manifold(io::example_manifold_json()); }

bool expr_is(const Expr& e, long long v) { return (e - Expr::from_int(v)).is_zero(); }

FrameManifold random_diagonal_manifold(std::mt19937& rng) {
    static const std::vector<std::string> frame_pool = {
        "1", "2", "1/2", "exp(z)", "exp(-z)", "exp(2*z)", "exp(x)", "exp(y)", "x + 1", "y + 2"};
    static const std::vector<std::string> metric_pool = {"1", "2", "1/2", "-1", "-2", "3"};
    const sym::Coords coords({"x", "y", "z"});
    std::uniform_int_distribution<size_t> fpick(0, frame_pool.size() - 1);
    std::uniform_int_distribution<size_t> mpick(0, metric_pool.size() - 1);
    geom::ExprMatrix frame(3, std::vector<Expr>(3)), metric(3, std::vector<Expr>(3));
    for (int i = 0; i < 3; ++i) {
        frame[size_t(i)][size_t(i)] = sym::parse(frame_pool[fpick(rng)], coords);
        metric[size_t(i)][size_t(i)] = sym::parse(metric_pool[mpick(rng)], coords);
    }
    return FrameManifold::build(coords, frame, metric);
}

flow::StructureConstants example_constants() {
    std::vector<double> v(27, 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                v[size_t((i * 3 + j) * 3 + k)] = PublishedFixture::bracket(i, j, k);
    return flow::StructureConstants(3, std::move(v));
}

flow::StructureConstants su2_constants() {
    std::vector<double> v(27, 0.0);
    auto at = [&](int i, int j, int k) -> double& { return v[size_t((i * 3 + j) * 3 + k)]; };
    at(0, 1, 2) = 1.0;
    at(1, 0, 2) = -1.0;
    at(1, 2, 0) = 1.0;
    at(2, 1, 0) = -1.0;
    at(2, 0, 1) = 1.0;
    at(0, 2, 1) = -1.0;
    return flow::StructureConstants(3, std::move(v));
}

bool criterion1(std::ostringstream& detail) {
    Workbench w{make_example()};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                if (!expr_is(w.m.structure_constant(i, j, k), PublishedFixture::bracket(i, j, k))) {
                    detail << "bracket mismatch at (" << i << "," << j << "," << k << ")";
                    return false;
                }
                if (!expr_is(w.conn.gamma(i, j, k), PublishedFixture::gamma(i, j, k))) {
                    detail << "connection mismatch at (" << i << "," << j << "," << k << ")";
                    return false;
                }
                for (int l = 0; l < 3; ++l)
                    if (!expr_is(w.cd.riem(i, j, k, l), PublishedFixture::riem(i, j, k, l))) {
                        detail << "curvature mismatch at (" << i << "," << j << "," << k << ","
                               << l << ")";
                        return false;
                    }
            }
    if (!expr_is(w.cd.ricci(2, 2), -2)) {
        detail << "S(e3,e3) != -2";
        return false;
    }
    detail << "27 brackets, 27 connection components, 81 curvature components, S(e3,e3) = -2";
    return true;
}

bool criterion2(std::ostringstream& detail) {
    // brute-force oracle: trace the published curvature table directly,
    // S(Y,Z) = sum_i eps_i g(R(e_i,Y)Z, e_i) with eps = ginv diag = (1,1,-1)
    const int eps[3] = {1, 1, -1};
    const int gdiag[3] = {1, 1, -1};
    int oracle_ric[3] = {0, 0, 0};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            oracle_ric[j] += eps[i] * PublishedFixture::riem(i, j, j, i) * gdiag[i];
    if (oracle_ric[0] != 2 || oracle_ric[1] != 2 || oracle_ric[2] != -2) {
        detail << "oracle trace is not (2,2,-2)";
        return false;
    }

    auto report = io::build_soliton_report(example_input(), io::ReportOptions{},
                                           io::SolitonRequest{});
    // (a) computed Ricci diagonal (2,2,-2), published S(e1,e1) = 0 flagged
    const auto& ric = report["curvature"]["ricci"];
    if (ric[0][0] != "2" || ric[1][1] != "2" || ric[2][2] != "-2") {
        detail << "computed Ricci diagonal is not (2,2,-2)";
        return false;
    }
    bool ricci_flagged = false, sign_flagged = false, relation_recorded = false,
         formula_recorded = false;
    for (const auto& d : report["discrepancies"]) {
        if (d["id"] == "published_ricci_component" && d["where"] == "(e1,e1)" &&
            d["computed"] == "2" && d["published"] == "0")
            ricci_flagged = true;
        if (d["id"] == "lie_derivative_eta_sign") {
            const auto& diag = d["computed_diagonal"];
            sign_flagged = diag[0] == "-2" && diag[1] == "-2" && diag[2] == "0";
        }
        if (d["id"] == "published_lambda_relation" && d["lambda_published"] == "3/2")
            relation_recorded = true;
        if (d["id"] == "theorem_lambda_vs_solve" && d["lambda_formula"] == "1/2")
            formula_recorded = true;
    }
    if (!ricci_flagged) {
        detail << "published S(e1,e1) = 0 not flagged";
        return false;
    }
    if (!sign_flagged) {
        detail << "eta x eta sign of the first Lie derivative not flagged against (-2,-2,0)";
        return false;
    }
    const auto& sol = report["soliton"];
    if (sol["lambda"] != "1" || sol["mu"] != "2") {
        detail << "direct solve did not give lambda = 1, mu = 2";
        return false;
    }
    if (!formula_recorded || !relation_recorded) {
        detail << "alternative lambda values (1/2 and 3/2) not both recorded";
        return false;
    }
    detail << "S = diag(2,2,-2) vs published (0,2,-2); L_xi g = (-2,-2,0) sign flag; "
              "lambda 1 vs 1/2 vs 3/2";
    return true;
}

bool criterion3(std::ostringstream& detail) {
    Workbench w{make_example()};
    auto suite = geom::identity_suite(w.cd, w.cs, Expr(), Expr::from_int(-1), Expr::from_int(1));
    for (const char* id :
         {"curvature_along_reeb", "curvature_reeb_first_slot", "space_form_model",
          "phi_curvature_identity_1", "phi_curvature_identity_2", "phi_curvature_identity_3",
          "phi_curvature_identity_4", "phi_curvature_identity_5", "phi_curvature_identity_6",
          "first_bianchi", "second_bianchi", "torsion_free", "metric_compatibility"}) {
        const auto* e = suite.find(id);
        if (!e || !e->pass) {
            detail << id << " failed on the example";
            return false;
        }
    }
    std::mt19937 rng(20240811);
    for (int t = 0; t < 20; ++t) {
        auto m = random_diagonal_manifold(rng);
        auto conn = Connection::levi_civita(m);
        auto cd = CurvatureData::compute(conn);
        auto inv = geom::check_curvature_invariants(cd);
        if (!inv.all()) {
            detail << "invariants failed on randomized manifold #" << t;
            return false;
        }
    }
    detail << "example suite + invariants on 20 randomized manifolds";
    return true;
}

bool criterion4(std::ostringstream& detail) {
    Workbench w{make_example()};
    auto model = geom::space_form_model(w.cs, Expr::from_int(1), Expr(), Expr::from_int(-1));
    auto contracted = geom::contract_model_ricci(w.cs, model);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!(contracted[size_t(i)][size_t(j)] - w.cd.ricci(i, j)).is_zero()) {
                detail << "contracted model Ricci != computed Ricci at (" << i << "," << j << ")";
                return false;
            }
    auto suite = geom::identity_suite(w.cd, w.cs, Expr(), Expr::from_int(-1), Expr::from_int(1));
    const auto* printed = suite.find("ricci_formula_printed");
    const auto* contracted_entry = suite.find("ricci_formula_contracted");
    if (!printed || printed->pass) {
        detail << "printed-coefficient variant was not reported as mismatching";
        return false;
    }
    if (!contracted_entry || !contracted_entry->pass) {
        detail << "contracted variant unexpectedly failed";
        return false;
    }
    detail << "contraction reproduces ricci(); printed variant mismatch detected";
    return true;
}

bool criterion5(std::ostringstream& detail) {
    Workbench w{make_example()};
    int unique_count = 0, checked = 0;
    {
        geom::SolitonProblem prob{&w.cd, w.cs.xi(), w.cs.eta(), geom::SolitonKind::hyperbolic,
                                  std::nullopt};
        auto sol = geom::solve_soliton(prob);
        ++checked;
        if (sol.status != geom::SolveStatus::unique || !sol.residuals_vanish) {
            detail << "example solve is not sound";
            return false;
        }
        ++unique_count;
    }
    const sym::Coords coords({"x", "y", "z"});
    std::mt19937 rng(20240812);
    const char* pool[] = {"1", "2", "3", "1/2", "-1", "-2"};
    std::uniform_int_distribution<size_t> pick(0, 5);
    for (int t = 0; t < 10; ++t) {
        geom::ExprMatrix frame(3, std::vector<Expr>(3)), metric(3, std::vector<Expr>(3));
        // even draws use an isotropic scaling rate (Einstein-like, solvable);
        // odd draws are fully random and often land on inconsistent systems,
        // which is a legitimate status the criterion does not count
        std::string rate_a = pool[pick(rng)];
        std::string rate_b = t % 2 == 0 ? rate_a : pool[pick(rng)];
        frame[0][0] = sym::parse(std::string("exp(") + rate_a + "*z)", coords);
        frame[1][1] = sym::parse(std::string("exp(") + rate_b + "*z)", coords);
        frame[2][2] = Expr::from_int(1);
        metric[0][0] = sym::parse(pool[pick(rng)], coords);
        metric[1][1] = sym::parse(pool[pick(rng)], coords);
        metric[2][2] = Expr::from_int(-1);
        auto m = FrameManifold::build(coords, frame, metric);
        auto conn = Connection::levi_civita(m);
        auto cd = CurvatureData::compute(conn);
        bool conformal = t % 2 == 1;
        geom::SolitonProblem prob{&cd,
                                  m.frame_field(2),
                                  {},
                                  conformal ? geom::SolitonKind::conformal
                                            : geom::SolitonKind::hyperbolic,
                                  conformal ? std::optional<Rational>(Rational(t - 4, 3))
                                            : std::nullopt};
        auto sol = geom::solve_soliton(prob);
        ++checked;
        if (sol.status == geom::SolveStatus::unique) {
            ++unique_count;
            if (!sol.residuals_vanish) {
                detail << "unique solve with nonzero residual on structure #" << t;
                return false;
            }
        }
    }
    detail << unique_count << "/" << checked << " solves unique, all residuals vanish";
    return unique_count >= 5;
}

bool criterion6(std::ostringstream& detail) {
    // deviation from sigma(t) g0 on the published homogeneous data
    flow::Matrix g0 = flow::Matrix::Zero(3, 3);
    g0(0, 0) = 1.0;
    g0(1, 1) = 1.0;
    g0(2, 2) = -1.0;
    flow::FlowProblem prob{example_constants(), g0,  g0, flow::FlowKind::hyperbolic,
                           0.0,                 1e-3, 500};
    auto traj = flow::integrate(prob);
    if (traj.degenerated) {
        detail << "unexpected degeneration";
        return false;
    }
    const double dev = flow::self_similar_deviation(traj, g0, 1.0, 2.0);
    if (!(dev <= 1e-8)) {
        detail << "deviation " << dev << " > 1e-8";
        return false;
    }

    // Richardson order on data with visible truncation error (non-Einstein
    // metric on su(2); the published data's solution is exactly quadratic,
    // so RK4 reproduces it to roundoff and has no measurable order there)
    flow::Matrix ga = flow::Matrix::Zero(3, 3);
    ga(0, 0) = 1.0;
    ga(1, 1) = 2.0;
    ga(2, 2) = 3.0;
    auto endpoint = [&](double h) {
        flow::FlowProblem p{su2_constants(), ga, flow::Matrix::Zero(3, 3),
                            flow::FlowKind::hyperbolic, 0.0, h,
                            static_cast<int>(std::lround(0.5 / h))};
        return flow::integrate(p).samples.back().g;
    };
    const double e1 = (endpoint(4e-3) - endpoint(2e-3)).norm();
    const double e2 = (endpoint(2e-3) - endpoint(1e-3)).norm();
    const double order = std::log2(e1 / e2);
    if (!(order >= 3.7 && order <= 4.3)) {
        detail << "Richardson order " << order << " outside [3.7, 4.3]";
        return false;
    }

    // exact-vs-numeric Ricci agreement at rational test metrics
    const sym::Coords coords({"x", "y", "z"});
    auto ez = sym::parse("exp(z)", coords);
    geom::ExprMatrix frame(3, std::vector<Expr>(3));
    frame[0][0] = ez;
    frame[1][1] = ez;
    frame[2][2] = Expr::from_int(1);
    const char* metrics[][3] = {{"1", "1", "-1"}, {"2", "1/2", "-3"}, {"1/3", "5", "-1/2"}};
    double worst = 0.0;
    for (const auto& mm : metrics) {
        geom::ExprMatrix metric(3, std::vector<Expr>(3));
        for (int i = 0; i < 3; ++i) metric[size_t(i)][size_t(i)] = sym::parse(mm[i], coords);
        auto m = FrameManifold::build(coords, frame, metric);
        auto conn = Connection::levi_civita(m);
        auto cd = CurvatureData::compute(conn);
        flow::Matrix g = flow::Matrix::Zero(3, 3);
        for (int i = 0; i < 3; ++i) g(i, i) = metric[size_t(i)][size_t(i)].evaluate({0, 0, 0});
        auto ric = flow::ricci_numeric(example_constants(), g);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst,
                                 std::abs(ric(i, j) - cd.ricci(i, j).evaluate({0, 0, 0})));
    }
    if (!(worst <= 1e-12)) {
        detail << "exact-vs-numeric Ricci disagreement " << worst;
        return false;
    }
    detail << "deviation " << dev << ", order " << order << ", ricci agreement " << worst;
    return true;
}

bool criterion7(std::ostringstream& detail) {
    std::mt19937 rng(20240813);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5), npick(1, 5);
    int checked = 0;
    while (checked < 50) {
        Rational alpha(num(rng), den(rng));
        Rational beta(num(rng), den(rng));
        if (beta == 0) continue;
        Rational mu(num(rng), den(rng));
        long n = npick(rng);
        const bool conformal = checked % 2 == 1;
        std::optional<Rational> p;
        if (conformal) p = Rational(num(rng), den(rng));
        auto rep = geom::theorem_thresholds(alpha, beta, n, mu, p,
                                            conformal ? geom::SolitonKind::conformal
                                                      : geom::SolitonKind::hyperbolic);
        // independent re-derivation: multiplying the lambda > 0 condition by
        // 4 beta flips the inequality for beta < 0
        const Rational excess = mu - rep.threshold;
        geom::Regime derived =
            excess == 0 ? geom::Regime::steady
            : ((excess > 0) == (beta > 0)) ? geom::Regime::expanding
                                           : geom::Regime::shrinking;
        if (derived != rep.regime_lambda_sign) {
            detail << "direct formula and re-derived inequality disagree at tuple #" << checked;
            return false;
        }
        // and the printed direction matches the formula sign exactly when beta > 0
        if (beta > 0 && rep.regime_printed_direction != rep.regime_lambda_sign) {
            detail << "printed direction deviates for beta > 0 at tuple #" << checked;
            return false;
        }
        ++checked;
    }
    detail << "50 random tuples, two evaluation routes agree exactly";
    return true;
}

} // namespace

int main() {
    run_criterion(1, "fixture regression (exact component tables)", 1.0, criterion1);
    run_criterion(2, "discrepancy audit (published vs computed)", 1.0, criterion2);
    run_criterion(3, "identity suite (example + 20 randomized manifolds)", 30.0, criterion3);
    run_criterion(4, "contraction consistency (model Ricci variants)", 0.0, criterion4);
    run_criterion(5, "soliton substitution soundness", 0.0, criterion5);
    run_criterion(6, "flow accuracy (deviation, order, exact-vs-numeric)", 10.0, criterion6);
    run_criterion(7, "threshold formulas on 50 random tuples", 0.0, criterion7);

    bool all = true;
    for (const auto& c : results) {
        all = all && c.pass;
        std::printf("criterion %d [%s]: %s (%.3f s)%s%s\n", c.number, c.label,
                    c.pass ? "PASS" : "FAIL", c.seconds, c.detail.empty() ? "" : " - ",
                    c.detail.c_str());
    }
    std::printf("acceptance: %s\n", all ? "ALL PASS" : "FAILURES");
    return all ? 0 : 1;
}
