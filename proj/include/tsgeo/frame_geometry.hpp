#ifndef TSGEO_FRAME_GEOMETRY_HPP
#define TSGEO_FRAME_GEOMETRY_HPP

#include "tsgeo/symexpr.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace tsgeo::geom {

using sym::Coords;
using sym::Expr;
using sym::Rational;

/// Vector field given by frame components: V = sum_i v[i] e_i.
using Field = std::vector<Expr>;

using ExprMatrix = std::vector<std::vector<Expr>>;

struct BuildError : std::runtime_error {
    explicit BuildError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& msg) : std::runtime_error(msg) {}
};

ExprMatrix identity_matrix(int d);
ExprMatrix matrix_product(const ExprMatrix& a, const ExprMatrix& b);
/// Exact inverse by Gauss-Jordan elimination, first nonzero pivot with row
/// swaps. Throws SingularMatrix when a pivot column is identically zero.
ExprMatrix invert_matrix(const ExprMatrix& m);

/// Manifold presented by a frame: coordinates, frame coefficient matrix A
/// (row i gives e_i = sum_mu A[i][mu] d/dx^mu) and the frame metric g[i][j].
/// Structure functions [e_i,e_j] = sum_k c[i][j][k] e_k and the metric
/// inverse are computed and cached at build time.
class FrameManifold {
public:
    static FrameManifold build(Coords coords, ExprMatrix frame, ExprMatrix metric);

    int dim() const { return d_; }
    const Coords& coords() const { return coords_; }
    const ExprMatrix& frame() const { return frame_; }
    const ExprMatrix& metric() const { return metric_; }
    const ExprMatrix& metric_inverse() const { return metric_inv_; }
    const Expr& structure_constant(int i, int j, int k) const {
        return c_[static_cast<size_t>((i * d_ + j) * d_ + k)];
    }

    /// e_i(f) = sum_mu A[i][mu] df/dx^mu
    Expr dir_deriv(int i, const Expr& f) const;
    /// V(f) for a frame-component field
    Expr field_deriv(const Field& v, const Expr& f) const;
    /// g(V, W)
    Expr pair(const Field& v, const Field& w) const;
    /// [V, W] in frame components
    Field bracket(const Field& v, const Field& w) const;

    Field frame_field(int i) const;
    Field zero_field() const;

private:
    FrameManifold(Coords coords, ExprMatrix frame, ExprMatrix metric);

    int d_;
    Coords coords_;
    ExprMatrix frame_;
    ExprMatrix metric_;
    ExprMatrix metric_inv_;
    std::vector<Expr> c_; // structure functions, d^3
};

/// Levi-Civita connection: Gamma[i][j][k] with nabla_{e_i} e_j = sum_k
/// Gamma[i][j][k] e_k (derivative direction first).
class Connection {
public:
    /// Koszul formula on all frame triples, contracted with the inverse
    /// metric. The result is checked to be torsion-free and
    /// metric-compatible (exact); violations are a logic error.
    static Connection levi_civita(const FrameManifold& m);

    const FrameManifold& manifold() const { return *m_; }
    const Expr& gamma(int i, int j, int k) const {
        return gamma_[static_cast<size_t>((i * d_ + j) * d_ + k)];
    }

    /// nabla_{e_i} V = e_i(v[k]) + sum_j v[j] Gamma[i][j][k]
    Field covariant_derivative(int i, const Field& v) const;

private:
    Connection(const FrameManifold& m, std::vector<Expr> gamma);

    const FrameManifold* m_;
    int d_;
    std::vector<Expr> gamma_;
};

Field add_fields(const Field& a, const Field& b);
Field sub_fields(const Field& a, const Field& b);
Field scale_field(const Expr& s, const Field& v);
bool field_is_zero(const Field& v);

} // namespace tsgeo::geom

#endif
