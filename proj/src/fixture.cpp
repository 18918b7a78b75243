#include "tsgeo/fixture.hpp"

namespace tsgeo {

using geom::ExprMatrix;
using geom::Field;
using geom::FrameManifold;
using sym::Coords;
using sym::Expr;

namespace {

ExprMatrix diag(const Expr& a, const Expr& b, const Expr& c) {
    ExprMatrix m(3, std::vector<Expr>(3));
    m[0][0] = a;
    m[1][1] = b;
    m[2][2] = c;
    return m;
}

ExprMatrix standard_phi() {
    ExprMatrix p(3, std::vector<Expr>(3));
    p[0][1] = Expr::from_int(-1);
    p[1][0] = Expr::from_int(1);
    return p;
}

Field standard_xi() {
    Field xi(3);
    xi[2] = Expr::from_int(1);
    return xi;
}

} // namespace

ExampleData make_example() {
    Coords coords({"x", "y", "z"});
    Expr ez = sym::parse("exp(z)", coords);
    auto m = FrameManifold::build(coords, diag(ez, ez, Expr::from_int(1)),
                                  diag(Expr::from_int(1), Expr::from_int(1), Expr::from_int(-1)));
    return {std::move(m), standard_phi(), standard_xi()};
}

ExampleData make_example_riemannian() {
    Coords coords({"x", "y", "z"});
    Expr ez = sym::parse("exp(z)", coords);
    auto m = FrameManifold::build(coords, diag(ez, ez, Expr::from_int(1)),
                                  diag(Expr::from_int(1), Expr::from_int(1), Expr::from_int(1)));
    return {std::move(m), standard_phi(), standard_xi()};
}

ExampleData make_flat_example() {
    Coords coords({"x", "y", "z"});
    auto m = FrameManifold::build(coords, geom::identity_matrix(3),
                                  diag(Expr::from_int(1), Expr::from_int(1), Expr::from_int(-1)));
    return {std::move(m), standard_phi(), standard_xi()};
}

} // namespace tsgeo
