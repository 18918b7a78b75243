// tsgeo: structure checks, curvature reports, soliton solving and flow
// integration for frame-presented Lorentzian trans-Sasakian manifolds.
#include "tsgeo/fixture.hpp"
#include "tsgeo/report.hpp"
#include "tsgeo/schema.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace tsgeo;

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitInputError = 2;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw io::InputError("cannot write '" + out_path + "'");
    out << text;
}

sym::Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return sym::Rational(text);
        return sym::Rational(text.substr(0, slash)) / sym::Rational(text.substr(slash + 1));
    } catch (const std::exception&) {
        throw io::InputError("'" + text + "' is not a rational p/q");
    }
}

geom::Field parse_field_spec(const std::string& spec, const io::ManifoldInput& input) {
    if (spec == "xi") {
        if (!input.xi) throw io::InputError("--field xi needs a contact block in the file");
        return *input.xi;
    }
    geom::Field v;
    std::string rest = spec;
    size_t pos = 0;
    while ((pos = rest.find(',')) != std::string::npos) {
        v.push_back(sym::parse(rest.substr(0, pos), input.manifold.coords()));
        rest = rest.substr(pos + 1);
    }
    v.push_back(sym::parse(rest, input.manifold.coords()));
    if (static_cast<int>(v.size()) != input.manifold.dim())
        throw io::InputError("--field needs " + std::to_string(input.manifold.dim()) +
                             " comma-separated components");
    return v;
}

struct FlowInput {
    flow::StructureConstants c;
    flow::Matrix g0;
};

// a flow file is either a manifold file (has "coordinates") or raw constants
// {"c": [[[...]]], "g0": [[...]]}
FlowInput load_flow_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::InputError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw io::InputError("invalid JSON in '" + path + "': " + e.what());
    }
    if (doc.is_object() && doc.contains("coordinates")) {
        auto input = io::load_manifold(doc);
        const auto& m = input.manifold;
        const int d = m.dim();
        std::vector<double> cnum(size_t(d * d * d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    const auto& e = m.structure_constant(i, j, k);
                    auto r = e.as_rational();
                    if (!r)
                        throw io::InputError(
                            "structure functions are not constant (found " +
                            e.str(m.coords()) +
                            " at [e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) +
                            "]); the flow integrator needs homogeneous input");
                    cnum[size_t((i * d + j) * d + k)] = r->convert_to<double>();
                }
        flow::Matrix g0(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                auto r = m.metric()[size_t(i)][size_t(j)].as_rational();
                if (!r) throw io::InputError("the flow integrator needs a constant frame metric");
                g0(i, j) = r->convert_to<double>();
            }
        return {flow::StructureConstants(d, std::move(cnum)), std::move(g0)};
    }
    if (!doc.is_object() || !doc.contains("c") || !doc.contains("g0"))
        throw io::InputError("flow input must be a manifold file or {\"c\": ..., \"g0\": ...}");
    const auto& cj = doc["c"];
    const int d = static_cast<int>(cj.size());
    std::vector<double> cnum(size_t(d * d * d));
    try {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    cnum[size_t((i * d + j) * d + k)] = cj.at(size_t(i)).at(size_t(j)).at(size_t(k)).get<double>();
    } catch (const nlohmann::json::exception&) {
        throw io::InputError("\"c\" must be a d x d x d numeric array");
    }
    flow::Matrix g0(d, d);
    try {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g0(i, j) = doc["g0"].at(size_t(i)).at(size_t(j)).get<double>();
    } catch (const nlohmann::json::exception&) {
        throw io::InputError("\"g0\" must be a d x d numeric array");
    }
    return {flow::StructureConstants(d, std::move(cnum)), std::move(g0)};
}

io::ReportOptions report_options(const std::string& ricci, const std::string& dconv) {
    io::ReportOptions opts;
    opts.ricci_convention = ricci == "flipped" ? geom::RicciConvention::flipped
                                               : geom::RicciConvention::standard;
    opts.d_convention = dconv == "half"   ? io::DConvChoice::half
                        : dconv == "full" ? io::DConvChoice::full
                                          : io::DConvChoice::both;
    return opts;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact trans-Sasakian structure / curvature / soliton workbench "
                 "with a numeric hyperbolic-flow integrator"};
    app.require_subcommand(1);

    std::string out_path;

    auto* cmd_example = app.add_subcommand("example", "print the built-in manifold file");
    std::string example_out;
    cmd_example->add_option("--out", example_out, "write to a file instead of stdout");

    std::string check_file;
    auto* cmd_check = app.add_subcommand("check", "verify the structure axioms");
    cmd_check->add_option("file", check_file, "manifold JSON file")->required();

    std::string report_file, report_ricci = "standard", report_dconv = "both", report_out;
    auto* cmd_report = app.add_subcommand("report", "full curvature and identity report");
    cmd_report->add_option("file", report_file, "manifold JSON file")->required();
    cmd_report->add_option("--ricci-convention", report_ricci, "standard | flipped")
        ->check(CLI::IsMember({"standard", "flipped"}));
    cmd_report->add_option("--d-convention", report_dconv, "half | full | both")
        ->check(CLI::IsMember({"half", "full", "both"}));
    cmd_report->add_option("--out", report_out, "write to a file instead of stdout");

    std::string soliton_file, soliton_field = "xi", soliton_kind = "hyperbolic", soliton_p;
    std::string soliton_ricci = "standard", soliton_dconv = "both", soliton_out;
    auto* cmd_soliton = app.add_subcommand("soliton", "solve the soliton equation");
    cmd_soliton->add_option("file", soliton_file, "manifold JSON file")->required();
    cmd_soliton->add_option("--field", soliton_field,
                            "xi or comma-separated frame components");
    cmd_soliton->add_option("--kind", soliton_kind, "hyperbolic | conformal")
        ->check(CLI::IsMember({"hyperbolic", "conformal"}));
    cmd_soliton->add_option("--p", soliton_p, "conformal pressure (rational)");
    cmd_soliton->add_option("--ricci-convention", soliton_ricci, "standard | flipped")
        ->check(CLI::IsMember({"standard", "flipped"}));
    cmd_soliton->add_option("--d-convention", soliton_dconv, "half | full | both")
        ->check(CLI::IsMember({"half", "full", "both"}));
    cmd_soliton->add_option("--out", soliton_out, "write to a file instead of stdout");

    std::string flow_file, flow_kind = "hyperbolic", flow_format = "csv", flow_out, flow_sigma;
    double flow_tmax = 1.0, flow_dt = 1e-3, flow_p = 0.0, flow_k0 = 0.0;
    auto* cmd_flow = app.add_subcommand("flow", "integrate the flow on homogeneous data");
    cmd_flow->add_option("file", flow_file, "manifold JSON file or raw constants file")
        ->required();
    cmd_flow->add_option("--t-max", flow_tmax, "integration end time");
    cmd_flow->add_option("--dt", flow_dt, "step size");
    cmd_flow->add_option("--kind", flow_kind, "hyperbolic | conformal")
        ->check(CLI::IsMember({"hyperbolic", "conformal"}));
    cmd_flow->add_option("--p", flow_p, "conformal pressure");
    cmd_flow->add_option("--k0-scale", flow_k0, "initial velocity k0 = a * g0");
    cmd_flow->add_option("--format", flow_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_flow->add_option("--out", flow_out, "trajectory output path (default stdout)");
    cmd_flow->add_option("--check-sigma", flow_sigma,
                         "\"lambda,mu\": report max deviation from sigma(t) g0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (cmd_example->parsed()) {
            write_output(io::example_manifold_json().dump(2), example_out);
            return kExitOk;
        }
        if (cmd_check->parsed()) {
            auto input = io::load_manifold_file(check_file);
            auto report = io::build_check_report(input);
            write_output(report.dump(2), "");
            if (!report["structure"]["valid"].get<bool>()) {
                const auto& v = report["structure"]["violations"][0];
                std::cerr << "violated: " << v["equation"].get<std::string>() << "\n";
                return kExitFindings;
            }
            return kExitOk;
        }
        if (cmd_report->parsed()) {
            auto input = io::load_manifold_file(report_file);
            auto report = io::build_full_report(input, report_options(report_ricci, report_dconv));
            write_output(report.dump(2), report_out);
            return io::exit_code_for(report);
        }
        if (cmd_soliton->parsed()) {
            auto input = io::load_manifold_file(soliton_file);
            io::SolitonRequest req;
            req.kind = soliton_kind == "conformal" ? geom::SolitonKind::conformal
                                                   : geom::SolitonKind::hyperbolic;
            if (req.kind == geom::SolitonKind::conformal) {
                if (soliton_p.empty())
                    throw io::InputError("--p is required for the conformal kind");
                req.pressure = parse_rational(soliton_p);
            } else if (!soliton_p.empty()) {
                throw io::InputError("--p only applies to the conformal kind");
            }
            if (soliton_field != "xi") req.field = parse_field_spec(soliton_field, input);
            auto report = io::build_soliton_report(
                input, report_options(soliton_ricci, soliton_dconv), req);
            write_output(report.dump(2), soliton_out);
            return io::exit_code_for(report);
        }
        if (cmd_flow->parsed()) {
            auto fin = load_flow_input(flow_file);
            flow::FlowProblem prob{std::move(fin.c),
                                   fin.g0,
                                   flow_k0 * fin.g0,
                                   flow_kind == "conformal" ? flow::FlowKind::conformal
                                                            : flow::FlowKind::hyperbolic,
                                   flow_p,
                                   flow_dt,
                                   static_cast<int>(std::lround(flow_tmax / flow_dt))};
            try {
                prob.validate();
            } catch (const std::invalid_argument& e) {
                throw io::InputError(e.what());
            }
            auto traj = flow::integrate(prob);

            std::string text = flow_format == "json" ? io::trajectory_json(traj).dump(2)
                                                     : flow::trajectory_csv(traj);
            write_output(text, flow_out);

            nlohmann::ordered_json summary;
            summary["samples"] = traj.samples.size();
            summary["t_end"] = traj.samples.back().t;
            summary["degenerated"] = traj.degenerated;
            summary["halt_reason"] = traj.halt_reason.empty()
                                         ? nlohmann::ordered_json(nullptr)
                                         : nlohmann::ordered_json(traj.halt_reason);
            if (!flow_sigma.empty()) {
                const auto comma = flow_sigma.find(',');
                if (comma == std::string::npos)
                    throw io::InputError("--check-sigma needs \"lambda,mu\"");
                const double lam = std::stod(flow_sigma.substr(0, comma));
                const double mu = std::stod(flow_sigma.substr(comma + 1));
                summary["sigma_lambda"] = lam;
                summary["sigma_mu"] = mu;
                summary["max_sigma_deviation"] =
                    flow::self_similar_deviation(traj, fin.g0, lam, mu);
            }
            std::ostream& sum_out = flow_out.empty() ? std::cerr : std::cout;
            sum_out << summary.dump(2) << "\n";
            return traj.degenerated ? kExitFindings : kExitOk;
        }
    } catch (const io::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const sym::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFindings;
    }
    return kExitOk;
}
