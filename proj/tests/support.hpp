#ifndef TSGEO_TESTS_SUPPORT_HPP
#define TSGEO_TESTS_SUPPORT_HPP

#include "tsgeo/fixture.hpp"
#include "tsgeo/frame_geometry.hpp"

#include <random>
#include <string>
#include <vector>

namespace tsgeo::test {

inline const sym::Coords& xyz() {
    static const sym::Coords c({"x", "y", "z"});
    return c;
}

inline sym::Expr E(const std::string& text) { return sym::parse(text, xyz()); }

inline geom::ExprMatrix diag3(const std::string& a, const std::string& b, const std::string& c) {
    geom::ExprMatrix m(3, std::vector<sym::Expr>(3));
    m[0][0] = E(a);
    m[1][1] = E(b);
    m[2][2] = E(c);
    return m;
}

/// Random diagonal-frame manifold with entries from a small expression pool
/// and a nonsingular constant diagonal metric.
inline geom::FrameManifold random_diagonal_manifold(std::mt19937& rng) {
    static const std::vector<std::string> frame_pool = {
        "1", "2", "1/2", "exp(z)", "exp(-z)", "exp(2*z)", "exp(x)", "exp(y)", "x + 1", "y + 2",
    };
    static const std::vector<std::string> metric_pool = {"1", "2", "1/2", "-1", "-2", "3"};
    std::uniform_int_distribution<size_t> fpick(0, frame_pool.size() - 1);
    std::uniform_int_distribution<size_t> mpick(0, metric_pool.size() - 1);
    auto frame = diag3(frame_pool[fpick(rng)], frame_pool[fpick(rng)], frame_pool[fpick(rng)]);
    auto metric = diag3(metric_pool[mpick(rng)], metric_pool[mpick(rng)], metric_pool[mpick(rng)]);
    return geom::FrameManifold::build(xyz(), frame, metric);
}

/// Homogeneous family: frame diag(exp(a z), exp(b z), 1), metric diag(p,q,r).
/// Structure constants are constant, so these feed both the soliton solver
/// and the numeric flow.
inline geom::FrameManifold homogeneous_manifold(const std::string& a, const std::string& b,
                                                const std::string& p, const std::string& q,
                                                const std::string& r) {
    auto frame = diag3("exp(" + a + "*z)", "exp(" + b + "*z)", "1");
    auto metric = diag3(p, q, r);
    return geom::FrameManifold::build(xyz(), frame, metric);
}

} // namespace tsgeo::test

#endif
