#ifndef TSGEO_FIXTURE_HPP
#define TSGEO_FIXTURE_HPP

#include "tsgeo/frame_geometry.hpp"

namespace tsgeo {

/// The built-in 3-dimensional example: coordinates (x,y,z), frame
/// e_1 = exp(z) d/dx, e_2 = exp(z) d/dy, e_3 = d/dz, Lorentzian metric
/// diag(1,1,-1), phi(e_1) = e_2, phi(e_2) = -e_1, phi(e_3) = 0, xi = e_3.
struct ExampleData {
    geom::FrameManifold manifold;
    geom::ExprMatrix phi; // column j = frame components of phi(e_j)
    geom::Field xi;
};

ExampleData make_example();

/// The same frame and contact data with Riemannian metric diag(1,1,1).
ExampleData make_example_riemannian();

/// Flat abelian variant: identity frame, metric diag(1,1,-1), same phi/xi.
ExampleData make_flat_example();

} // namespace tsgeo

#endif
