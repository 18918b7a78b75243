#ifndef TSGEO_MANIFOLD_IO_HPP
#define TSGEO_MANIFOLD_IO_HPP

#include "tsgeo/frame_geometry.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace tsgeo::io {

/// Input-side failure (bad file, bad JSON, bad expressions, bad dimensions).
/// Commands map this to exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ManifoldInput {
    geom::FrameManifold manifold;
    std::optional<geom::ExprMatrix> phi; // column j = components of phi(e_j)
    std::optional<geom::Field> xi;
    bool has_contact() const { return phi.has_value() && xi.has_value(); }
};

/// Manifold-file schema: {"coordinates": [...], "frame": [[expr]],
/// "metric": [[expr]], "contact": {"phi": [[expr]], "xi": [expr]}?}.
ManifoldInput load_manifold(const nlohmann::json& doc);
ManifoldInput load_manifold_file(const std::string& path);

nlohmann::ordered_json manifold_to_json(const geom::FrameManifold& m, const geom::ExprMatrix* phi,
                                        const geom::Field* xi);

/// JSON for the built-in example shipped with the tool.
nlohmann::ordered_json example_manifold_json();

/// Exact (semantic) comparison against the built-in example.
bool is_builtin_example(const ManifoldInput& input);

} // namespace tsgeo::io

#endif
