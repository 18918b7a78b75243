#include "tsgeo/report.hpp"

#include "tsgeo/curvature.hpp"
#include "tsgeo/fixture.hpp"

namespace tsgeo::io {

using geom::Connection;
using geom::ContactStructure;
using geom::CurvatureData;
using geom::DConvention;
using geom::Expr;
using geom::ExprMatrix;
using geom::Field;
using geom::FrameManifold;
using nlohmann::ordered_json;
using sym::Coords;
using sym::Rational;

namespace {

ordered_json residuals_json(const std::vector<geom::ResidualEntry>& rs) {
    ordered_json out = ordered_json::array();
    for (const auto& r : rs) out.push_back({{"where", r.where}, {"value", r.value}});
    return out;
}

ordered_json violations_json(const std::vector<geom::AxiomViolation>& vs) {
    ordered_json out = ordered_json::array();
    for (const auto& v : vs)
        out.push_back({{"equation", v.equation}, {"i", v.i}, {"j", v.j}, {"residual", v.residual}});
    return out;
}

ordered_json matrix_json(const ExprMatrix& m, const Coords& coords) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : m) {
        ordered_json r = ordered_json::array();
        for (const auto& e : row) r.push_back(e.str(coords));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string dconv_name(DConvention c) { return c == DConvention::half ? "half" : "full"; }

std::vector<DConvention> conventions_for(DConvChoice choice) {
    switch (choice) {
    case DConvChoice::half: return {DConvention::half};
    case DConvChoice::full: return {DConvention::full};
    case DConvChoice::both: return {DConvention::half, DConvention::full};
    }
    return {};
}

// published component tables of the built-in example, used for the audit
struct PublishedTables {
    // [i][j] -> nonzero bracket components, frame index -> coefficient
    static ExprMatrix ricci() {
        ExprMatrix m(3, std::vector<Expr>(3));
        m[0][0] = Expr::from_int(0);
        m[1][1] = Expr::from_int(2);
        m[2][2] = Expr::from_int(-2);
        return m;
    }
};

struct Pipeline {
    explicit Pipeline(const ManifoldInput& input, const ReportOptions& opts)
        : m(input.manifold), conn(Connection::levi_civita(m)),
          cs(ContactStructure::attach(m, conn, *input.phi, *input.xi)),
          cd(CurvatureData::compute(conn, opts.ricci_convention)) {}
    const FrameManifold& m;
    Connection conn;
    ContactStructure cs;
    CurvatureData cd;
};

ordered_json skipped(const std::string& why) {
    return ordered_json{{"skipped", true}, {"reason", why}};
}

void fixture_audit(const Pipeline& p, const geom::PhiSectionalReport* phi_rep,
                   ordered_json& report, ordered_json& discrepancies) {
    const Coords& coords = p.m.coords();
    auto ex = make_example();
    auto conn = Connection::levi_civita(ex.manifold);
    auto cd = CurvatureData::compute(conn);

    ordered_json audit = ordered_json::array();
    // brackets, connection and curvature published tables equal the computed
    // ones; recompute the comparison rather than asserting it
    bool brackets_ok = true, connection_ok = true, curvature_ok = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                brackets_ok = brackets_ok && (p.m.structure_constant(i, j, k) ==
                                              ex.manifold.structure_constant(i, j, k));
                connection_ok = connection_ok && (p.conn.gamma(i, j, k) == conn.gamma(i, j, k));
                for (int l = 0; l < 3; ++l)
                    curvature_ok = curvature_ok && (p.cd.riem(i, j, k, l) == cd.riem(i, j, k, l));
            }
    audit.push_back({{"table", "brackets"}, {"matches", brackets_ok}});
    audit.push_back({{"table", "connection"}, {"matches", connection_ok}});
    audit.push_back({{"table", "curvature"}, {"matches", curvature_ok}});

    auto published_ric = PublishedTables::ricci();
    ordered_json ric_mismatches = ordered_json::array();
    for (int i = 0; i < 3; ++i) {
        Expr diff = p.cd.ricci(i, i) - published_ric[size_t(i)][size_t(i)];
        if (!diff.is_zero()) {
            ordered_json entry{{"where", "(e" + std::to_string(i + 1) + ",e" +
                                             std::to_string(i + 1) + ")"},
                               {"computed", p.cd.ricci(i, i).str(coords)},
                               {"published", published_ric[size_t(i)][size_t(i)].str(coords)}};
            ric_mismatches.push_back(entry);
            discrepancies.push_back({{"id", "published_ricci_component"},
                                     {"where", entry["where"]},
                                     {"computed", entry["computed"]},
                                     {"published", entry["published"]}});
        }
    }
    audit.push_back({{"table", "ricci"},
                     {"matches", ric_mismatches.empty()},
                     {"mismatches", ric_mismatches}});
    if (phi_rep) {
        bool c_ok = (phi_rep->value - Expr::from_int(1)).is_zero();
        audit.push_back({{"table", "phi_sectional"},
                         {"matches", c_ok},
                         {"computed", phi_rep->value.str(coords)},
                         {"published", "1"}});
    }
    report["published_example_audit"] = std::move(audit);
}

void lie_sign_discrepancy(const Pipeline& p, const Expr& beta, ordered_json& discrepancies) {
    // the published first Lie derivative is 2 beta (g - eta x eta); the
    // covariant-derivative expansion gives 2 beta (g + eta x eta)
    const auto h = geom::lie_derivative_metric(p.conn, p.cs.xi());
    const Expr two_beta = Expr::from_int(2) * beta;
    bool minus_matches = true, plus_matches = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Expr eiej = p.cs.eta()[size_t(i)] * p.cs.eta()[size_t(j)];
            const Expr& gij = p.m.metric()[size_t(i)][size_t(j)];
            minus_matches =
                minus_matches && (h[size_t(i)][size_t(j)] - two_beta * (gij - eiej)).is_zero();
            plus_matches =
                plus_matches && (h[size_t(i)][size_t(j)] - two_beta * (gij + eiej)).is_zero();
        }
    if (plus_matches && !minus_matches) {
        ordered_json computed = ordered_json::array();
        for (int i = 0; i < p.m.dim(); ++i)
            computed.push_back(h[size_t(i)][size_t(i)].str(p.m.coords()));
        discrepancies.push_back(
            {{"id", "lie_derivative_eta_sign"},
             {"detail", "computed L_xi g equals 2*beta*(g + eta x eta); the published form "
                        "2*beta*(g - eta x eta) does not match"},
             {"computed_diagonal", computed}});
    }
}

ordered_json base_report(const ManifoldInput& input, const ReportOptions& opts,
                         std::optional<Pipeline>& pipe_out,
                         std::optional<geom::TransSasakianReport>& ts_out,
                         std::optional<geom::PhiSectionalReport>& phi_out) {
    if (!input.has_contact())
        throw InputError("manifold file has no \"contact\" block (phi and xi are required)");

    ordered_json report;
    report["schema"] = "tsgeo-report/1";
    const bool builtin = is_builtin_example(input);
    report["input"] = {{"dimension", input.manifold.dim()},
                       {"coordinates", input.manifold.coords().names()},
                       {"builtin_example", builtin}};

    pipe_out.emplace(input, opts);
    Pipeline& p = *pipe_out;
    const Coords& coords = p.m.coords();

    report["structure"] = {{"valid", p.cs.valid()},
                           {"violations", violations_json(p.cs.violations())}};

    ordered_json discrepancies = ordered_json::array();

    if (!p.cs.valid()) {
        report["trans_sasakian"] = skipped("structure axioms failed");
        report["curvature"] = skipped("structure axioms failed");
        report["identities"] = skipped("structure axioms failed");
        report["discrepancies"] = std::move(discrepancies);
        return report;
    }

    // trans-Sasakian functions
    ordered_json ts_json;
    try {
        ts_out = geom::extract_trans_sasakian(p.cs);
        const auto& ts = *ts_out;
        ts_json["alpha"] = ts.alpha.str(coords);
        ts_json["beta"] = ts.beta.str(coords);
        ts_json["alpha_constant"] = ts.alpha_constant;
        ts_json["beta_constant"] = ts.beta_constant;
        ts_json["probe"] = ts.probe + 1;
        ts_json["checked"] = ts.checked;
        ts_json["pass"] = ts.pass;
        ts_json["failures"] = residuals_json(ts.failures);

        ordered_json normality = ordered_json::array();
        ordered_json oubina = ordered_json::array();
        for (DConvention conv : conventions_for(opts.d_convention)) {
            auto norm = geom::normality_tensors(p.cs, conv);
            normality.push_back({{"convention", dconv_name(conv)},
                                 {"all_vanish", norm.all_vanish},
                                 {"failures", residuals_json(norm.failures)}});
            auto oub = geom::oubina_check(p.cs, ts.alpha, ts.beta, conv);
            oubina.push_back({{"convention", dconv_name(conv)},
                              {"d_eta_matches", oub.d_eta_matches},
                              {"d_phi_matches", oub.d_phi_matches},
                              {"failures", residuals_json(oub.failures)}});
        }
        ts_json["normality"] = std::move(normality);
        ts_json["oubina"] = std::move(oubina);
    } catch (const geom::NoProbeVector& e) {
        ts_json = skipped(e.what());
    }
    report["trans_sasakian"] = std::move(ts_json);

    // curvature tables
    ordered_json curv;
    curv["ricci_convention"] =
        opts.ricci_convention == geom::RicciConvention::standard ? "standard" : "flipped";
    ordered_json riem = ordered_json::array();
    const int d = p.m.dim();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                ordered_json comps = ordered_json::array();
                for (int l = 0; l < d; ++l) comps.push_back(p.cd.riem(i, j, k, l).str(coords));
                riem.push_back(
                    {{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"components", std::move(comps)}});
            }
    curv["riemann"] = std::move(riem);
    ExprMatrix ric(static_cast<size_t>(d), std::vector<Expr>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) ric[size_t(i)][size_t(j)] = p.cd.ricci(i, j);
    curv["ricci"] = matrix_json(ric, coords);
    curv["scalar"] = p.cd.scalar().str(coords);
    try {
        phi_out = geom::phi_sectional_constancy(p.cd, p.cs);
        curv["phi_sectional"] = {{"value", phi_out->value.str(coords)},
                                 {"constant_on_probes", phi_out->constant_on_probes},
                                 {"probes_checked", phi_out->probes_checked}};
    } catch (const geom::DegenerateProbe& e) {
        curv["phi_sectional"] = skipped(e.what());
    }
    report["curvature"] = std::move(curv);

    // identity suite
    if (ts_out && ts_out->pass && ts_out->alpha_constant && ts_out->beta_constant && phi_out &&
        phi_out->value.is_constant()) {
        auto suite = geom::identity_suite(p.cd, p.cs, ts_out->alpha, ts_out->beta, phi_out->value);
        ordered_json entries = ordered_json::array();
        for (const auto& e : suite.entries) {
            ordered_json ej{{"id", e.id},
                            {"domain", e.domain},
                            {"checked", e.checked},
                            {"pass", e.pass}};
            ej["first_failure"] =
                e.failures.empty()
                    ? ordered_json(nullptr)
                    : ordered_json{{"where", e.failures.front().where},
                                   {"value", e.failures.front().value}};
            entries.push_back(std::move(ej));
        }
        report["identities"] = {{"all_pass", suite.all_pass}, {"entries", std::move(entries)}};

        const auto* printed = suite.find("ricci_formula_printed");
        const auto* contracted = suite.find("ricci_formula_contracted");
        if (printed && contracted && !printed->pass && contracted->pass) {
            discrepancies.push_back(
                {{"id", "ricci_printed_formula_mismatch"},
                 {"detail", "the printed closed-form Ricci coefficients disagree with the "
                            "direct contraction of the space-form model"},
                 {"first_failure", {{"where", printed->failures.front().where},
                                    {"value", printed->failures.front().value}}}});
        }
        lie_sign_discrepancy(p, ts_out->beta, discrepancies);
    } else {
        std::string why = !ts_out ? "trans-Sasakian extraction skipped"
                          : !ts_out->pass ? "structure is not trans-Sasakian"
                          : !(ts_out->alpha_constant && ts_out->beta_constant)
                              ? "alpha or beta is not constant"
                          : !phi_out ? "no phi-sectional probe"
                                     : "phi-sectional curvature is not constant";
        report["identities"] = skipped(why);
    }

    if (is_builtin_example(input))
        fixture_audit(p, phi_out ? &*phi_out : nullptr, report, discrepancies);
    report["discrepancies"] = std::move(discrepancies);
    return report;
}

} // namespace

ordered_json build_check_report(const ManifoldInput& input) {
    if (!input.has_contact())
        throw InputError("manifold file has no \"contact\" block (phi and xi are required)");
    ordered_json report;
    report["schema"] = "tsgeo-check/1";
    const FrameManifold& m = input.manifold;
    Connection conn = Connection::levi_civita(m);
    ContactStructure cs = ContactStructure::attach(m, conn, *input.phi, *input.xi);
    report["structure"] = {{"valid", cs.valid()}, {"violations", violations_json(cs.violations())}};
    return report;
}

ordered_json build_full_report(const ManifoldInput& input, const ReportOptions& opts) {
    std::optional<Pipeline> pipe;
    std::optional<geom::TransSasakianReport> ts;
    std::optional<geom::PhiSectionalReport> phi;
    return base_report(input, opts, pipe, ts, phi);
}

ordered_json build_soliton_report(const ManifoldInput& input, const ReportOptions& opts,
                                  const SolitonRequest& request) {
    std::optional<Pipeline> pipe;
    std::optional<geom::TransSasakianReport> ts;
    std::optional<geom::PhiSectionalReport> phi;
    ordered_json report = base_report(input, opts, pipe, ts, phi);
    Pipeline& p = *pipe;
    const Coords& coords = p.m.coords();
    const int d = p.m.dim();

    ordered_json sj;
    Field v = request.field ? *request.field : p.cs.xi();
    sj["kind"] = request.kind == geom::SolitonKind::hyperbolic ? "hyperbolic" : "conformal";
    {
        ordered_json fj = ordered_json::array();
        for (const auto& e : v) fj.push_back(e.str(coords));
        sj["field"] = std::move(fj);
    }
    sj["pressure"] =
        request.pressure ? ordered_json(sym::rational_str(*request.pressure)) : ordered_json(nullptr);

    geom::SolitonProblem prob{&p.cd, v, p.cs.eta(), request.kind, request.pressure};
    auto sol = geom::solve_soliton(prob);
    sj["status"] = geom::to_string(sol.status);
    sj["lambda"] = sol.lambda ? ordered_json(sym::rational_str(*sol.lambda)) : ordered_json(nullptr);
    sj["mu"] = sol.mu ? ordered_json(sym::rational_str(*sol.mu)) : ordered_json(nullptr);
    sj["classification"] = geom::to_string(sol.classification);
    sj["residuals_vanish"] = sol.residuals_vanish;
    sj["residuals"] = residuals_json(sol.residuals);
    sj["null_direction"] =
        sol.null_direction
            ? ordered_json::array({sym::rational_str(sol.null_direction->first),
                                   sym::rational_str(sol.null_direction->second)})
            : ordered_json(nullptr);
    sj["eta_einstein_fit"] = {{"a", sol.eta_fit.a.str(coords)},
                              {"b", sol.eta_fit.b.str(coords)},
                              {"exact", sol.eta_fit.exact},
                              {"residuals", residuals_json(sol.eta_fit.residuals)}};

    // closed-form theorem comparison (the V = xi specialization)
    ordered_json cmp;
    auto alpha_r = ts ? ts->alpha.as_rational() : std::nullopt;
    auto beta_r = ts ? ts->beta.as_rational() : std::nullopt;
    if (!ts || !alpha_r || !beta_r)
        cmp = skipped("alpha and beta are not extracted constants");
    else if (*beta_r == 0)
        cmp = skipped("beta = 0 violates the theorem hypothesis");
    else if (d % 2 == 0)
        cmp = skipped("even-dimensional manifold");
    else if (!sol.mu)
        cmp = skipped("mu was not determined by the solve");
    else {
        const long n = (d - 1) / 2;
        auto thr = geom::theorem_thresholds(*alpha_r, *beta_r, n, *sol.mu, request.pressure,
                                            request.kind);
        cmp["n"] = n;
        cmp["lambda_formula"] = sym::rational_str(thr.lambda_formula);
        cmp["lambda_solved"] =
            sol.lambda ? ordered_json(sym::rational_str(*sol.lambda)) : ordered_json(nullptr);
        cmp["threshold"] = sym::rational_str(thr.threshold);
        cmp["regime_printed_direction"] = geom::to_string(thr.regime_printed_direction);
        cmp["regime_lambda_sign"] = geom::to_string(thr.regime_lambda_sign);
        if (sol.lambda && *sol.lambda != thr.lambda_formula) {
            report["discrepancies"].push_back(
                {{"id", "theorem_lambda_vs_solve"},
                 {"detail", "the closed-form lambda differs from the directly solved lambda"},
                 {"lambda_formula", sym::rational_str(thr.lambda_formula)},
                 {"lambda_solved", sym::rational_str(*sol.lambda)}});
        }
    }
    sj["theorem_comparison"] = std::move(cmp);

    // published lambda-mu relation of the built-in example (V = xi, hyperbolic)
    if (is_builtin_example(input) && request.kind == geom::SolitonKind::hyperbolic &&
        geom::field_is_zero(geom::sub_fields(v, p.cs.xi())) && sol.mu) {
        const Rational published = 1 + *sol.mu / 4;
        ordered_json pub{{"relation", "lambda = 1 + mu/4"},
                         {"lambda_at_solved_mu", sym::rational_str(published)}};
        sj["published_example"] = pub;
        if (sol.lambda && *sol.lambda != published) {
            report["discrepancies"].push_back(
                {{"id", "published_lambda_relation"},
                 {"detail", "the published lambda-mu relation does not reproduce the solved "
                            "lambda"},
                 {"lambda_published", sym::rational_str(published)},
                 {"lambda_solved", sym::rational_str(*sol.lambda)}});
        }
    }

    report["soliton"] = std::move(sj);
    return report;
}

ordered_json trajectory_json(const flow::FlowTrajectory& traj) {
    ordered_json doc;
    doc["schema"] = "tsgeo-trajectory/1";
    const int d = traj.samples.empty() ? 0 : static_cast<int>(traj.samples.front().g.rows());
    doc["dimension"] = d;
    doc["degenerated"] = traj.degenerated;
    doc["halt_reason"] = traj.halt_reason.empty() ? ordered_json(nullptr)
                                                  : ordered_json(traj.halt_reason);
    ordered_json samples = ordered_json::array();
    auto mat = [&](const flow::Matrix& m) {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < d; ++i) {
            ordered_json row = ordered_json::array();
            for (int j = 0; j < d; ++j) row.push_back(m(i, j));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    for (const auto& s : traj.samples) {
        samples.push_back({{"t", s.t},
                           {"g", mat(s.g)},
                           {"k", mat(s.k)},
                           {"symmetry_drift", s.symmetry_drift},
                           {"det", s.det},
                           {"signature", {s.positive_eigenvalues, s.negative_eigenvalues}},
                           {"r", s.scalar},
                           {"einstein_residual", s.einstein_residual}});
    }
    doc["samples"] = std::move(samples);
    return doc;
}

int exit_code_for(const ordered_json& report) {
    auto section_failed = [&](const char* key) {
        if (!report.contains(key)) return false;
        const auto& s = report[key];
        if (s.contains("skipped") && s["skipped"].get<bool>()) return false;
        if (s.contains("valid") && !s["valid"].get<bool>()) return true;
        if (s.contains("pass") && !s["pass"].get<bool>()) return true;
        if (s.contains("all_pass") && !s["all_pass"].get<bool>()) return true;
        return false;
    };
    if (section_failed("structure") || section_failed("trans_sasakian") ||
        section_failed("identities"))
        return 1;
    if (report.contains("discrepancies") && !report["discrepancies"].empty()) return 1;
    if (report.contains("soliton")) {
        const auto& s = report["soliton"];
        const std::string status = s["status"].get<std::string>();
        if (status == "inconsistent" || status == "non-constant-coefficients") return 1;
        if (status == "unique" && !s["residuals_vanish"].get<bool>()) return 1;
    }
    return 0;
}

} // namespace tsgeo::io
