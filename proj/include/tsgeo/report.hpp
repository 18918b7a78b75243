#ifndef TSGEO_REPORT_HPP
#define TSGEO_REPORT_HPP

#include "tsgeo/flow.hpp"
#include "tsgeo/manifold_io.hpp"
#include "tsgeo/soliton.hpp"

#include <json.hpp>

#include <optional>

namespace tsgeo::io {

enum class DConvChoice { half, full, both };

struct ReportOptions {
    geom::RicciConvention ricci_convention = geom::RicciConvention::standard;
    DConvChoice d_convention = DConvChoice::both;
};

struct SolitonRequest {
    geom::SolitonKind kind = geom::SolitonKind::hyperbolic;
    std::optional<sym::Rational> pressure;
    std::optional<geom::Field> field; // nullopt = use xi
};

/// Structure-axiom section only (the `check` command).
nlohmann::ordered_json build_check_report(const ManifoldInput& input);

/// Structure, trans-Sasakian functions, curvature, identity suite and
/// discrepancy findings. Deterministic key order and canonical expression
/// printing throughout, so the output is byte-stable.
nlohmann::ordered_json build_full_report(const ManifoldInput& input, const ReportOptions& opts);

/// Full report plus the soliton section.
nlohmann::ordered_json build_soliton_report(const ManifoldInput& input, const ReportOptions& opts,
                                            const SolitonRequest& request);

/// 0 when every check passed and no discrepancies were found, 1 otherwise.
int exit_code_for(const nlohmann::ordered_json& report);

/// JSON document mirroring a FlowTrajectory.
nlohmann::ordered_json trajectory_json(const flow::FlowTrajectory& traj);

} // namespace tsgeo::io

#endif
