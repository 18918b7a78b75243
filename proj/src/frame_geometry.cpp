#include "tsgeo/frame_geometry.hpp"

namespace tsgeo::geom {

ExprMatrix identity_matrix(int d) {
    ExprMatrix m(static_cast<size_t>(d), std::vector<Expr>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = Expr::from_int(1);
    return m;
}

ExprMatrix matrix_product(const ExprMatrix& a, const ExprMatrix& b) {
    const size_t n = a.size(), m = b[0].size(), k = b.size();
    ExprMatrix out(n, std::vector<Expr>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            Expr s;
            for (size_t l = 0; l < k; ++l) s += a[i][l] * b[l][j];
            out[i][j] = s;
        }
    return out;
}

ExprMatrix invert_matrix(const ExprMatrix& m) {
    const int d = static_cast<int>(m.size());
    ExprMatrix a = m;
    ExprMatrix inv = identity_matrix(d);
    for (int col = 0; col < d; ++col) {
        int pivot = -1;
        for (int row = col; row < d; ++row) {
            if (!a[static_cast<size_t>(row)][static_cast<size_t>(col)].is_zero()) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0)
            throw SingularMatrix("matrix is singular: column " + std::to_string(col) +
                                 " has no nonzero pivot");
        if (pivot != col) {
            std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(col)]);
            std::swap(inv[static_cast<size_t>(pivot)], inv[static_cast<size_t>(col)]);
        }
        const Expr p = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
        for (int j = 0; j < d; ++j) {
            a[static_cast<size_t>(col)][static_cast<size_t>(j)] /= p;
            inv[static_cast<size_t>(col)][static_cast<size_t>(j)] /= p;
        }
        for (int row = 0; row < d; ++row) {
            if (row == col) continue;
            const Expr f = a[static_cast<size_t>(row)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            for (int j = 0; j < d; ++j) {
                a[static_cast<size_t>(row)][static_cast<size_t>(j)] -=
                    f * a[static_cast<size_t>(col)][static_cast<size_t>(j)];
                inv[static_cast<size_t>(row)][static_cast<size_t>(j)] -=
                    f * inv[static_cast<size_t>(col)][static_cast<size_t>(j)];
            }
        }
    }
    return inv;
}

FrameManifold::FrameManifold(Coords coords, ExprMatrix frame, ExprMatrix metric)
    : d_(coords.size()), coords_(std::move(coords)), frame_(std::move(frame)),
      metric_(std::move(metric)) {}

FrameManifold FrameManifold::build(Coords coords, ExprMatrix frame, ExprMatrix metric) {
    const int d = coords.size();
    if (d == 0) throw BuildError("empty coordinate list");
    auto check_square = [d](const ExprMatrix& m, const char* what) {
        if (static_cast<int>(m.size()) != d)
            throw BuildError(std::string(what) + " must have one row per coordinate");
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != d)
                throw BuildError(std::string(what) + " must be square");
    };
    check_square(frame, "frame matrix");
    check_square(metric, "metric");
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (!(metric[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                  metric[static_cast<size_t>(j)][static_cast<size_t>(i)])
                     .is_zero())
                throw BuildError("metric is not symmetric at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");

    FrameManifold m(std::move(coords), std::move(frame), std::move(metric));

    ExprMatrix frame_inv;
    try {
        frame_inv = invert_matrix(m.frame_);
    } catch (const SingularMatrix& e) {
        throw BuildError(std::string("singular frame matrix: ") + e.what());
    }
    try {
        m.metric_inv_ = invert_matrix(m.metric_);
    } catch (const SingularMatrix& e) {
        throw BuildError(std::string("singular metric: ") + e.what());
    }

    // brackets of frame fields in the coordinate basis, then back to frame
    // components through the inverse: sum_k c[i][j][k] A[k][mu] = b[mu]
    m.c_.assign(static_cast<size_t>(d * d * d), Expr());
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            std::vector<Expr> b(static_cast<size_t>(d));
            for (int mu = 0; mu < d; ++mu)
                b[static_cast<size_t>(mu)] =
                    m.dir_deriv(i, m.frame_[static_cast<size_t>(j)][static_cast<size_t>(mu)]) -
                    m.dir_deriv(j, m.frame_[static_cast<size_t>(i)][static_cast<size_t>(mu)]);
            for (int k = 0; k < d; ++k) {
                Expr ck;
                for (int mu = 0; mu < d; ++mu)
                    ck += b[static_cast<size_t>(mu)] *
                          frame_inv[static_cast<size_t>(mu)][static_cast<size_t>(k)];
                m.c_[static_cast<size_t>((i * d + j) * d + k)] = ck;
                m.c_[static_cast<size_t>((j * d + i) * d + k)] = -ck;
            }
        }
    }
    return m;
}

Expr FrameManifold::dir_deriv(int i, const Expr& f) const {
    Expr out;
    for (int mu = 0; mu < d_; ++mu)
        out += frame_[static_cast<size_t>(i)][static_cast<size_t>(mu)] * f.derivative(mu);
    return out;
}

Expr FrameManifold::field_deriv(const Field& v, const Expr& f) const {
    Expr out;
    for (int i = 0; i < d_; ++i) out += v[static_cast<size_t>(i)] * dir_deriv(i, f);
    return out;
}

Expr FrameManifold::pair(const Field& v, const Field& w) const {
    Expr out;
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
            out += v[static_cast<size_t>(i)] *
                   metric_[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                   w[static_cast<size_t>(j)];
    return out;
}

Field FrameManifold::bracket(const Field& v, const Field& w) const {
    Field out(static_cast<size_t>(d_));
    for (int k = 0; k < d_; ++k) {
        Expr t = field_deriv(v, w[static_cast<size_t>(k)]) -
                 field_deriv(w, v[static_cast<size_t>(k)]);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                t += v[static_cast<size_t>(i)] * w[static_cast<size_t>(j)] *
                     structure_constant(i, j, k);
        out[static_cast<size_t>(k)] = t;
    }
    return out;
}

Field FrameManifold::frame_field(int i) const {
    Field v(static_cast<size_t>(d_));
    v[static_cast<size_t>(i)] = Expr::from_int(1);
    return v;
}

Field FrameManifold::zero_field() const { return Field(static_cast<size_t>(d_)); }

Connection::Connection(const FrameManifold& m, std::vector<Expr> gamma)
    : m_(&m), d_(m.dim()), gamma_(std::move(gamma)) {}

Connection Connection::levi_civita(const FrameManifold& m) {
    const int d = m.dim();
    const auto& g = m.metric();
    const auto& ginv = m.metric_inverse();
    auto gc = [&](int a, int b, int cidx) {
        // g(e_a, [e_b, e_c]) = sum_l c[b][c][l] g[a][l]
        Expr t;
        for (int l = 0; l < d; ++l)
            t += m.structure_constant(b, cidx, l) *
                 g[static_cast<size_t>(a)][static_cast<size_t>(l)];
        return t;
    };

    std::vector<Expr> gamma(static_cast<size_t>(d * d * d));
    const Expr half = Expr::from_rational(Rational(1, 2));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            std::vector<Expr> rhs(static_cast<size_t>(d));
            for (int k = 0; k < d; ++k) {
                // 2 g(nabla_{e_i} e_j, e_k), six Koszul terms
                Expr t = m.dir_deriv(i, g[static_cast<size_t>(j)][static_cast<size_t>(k)]) +
                         m.dir_deriv(j, g[static_cast<size_t>(i)][static_cast<size_t>(k)]) -
                         m.dir_deriv(k, g[static_cast<size_t>(i)][static_cast<size_t>(j)]);
                t -= gc(i, j, k);
                t -= gc(j, i, k);
                t += gc(k, i, j);
                rhs[static_cast<size_t>(k)] = t;
            }
            for (int l = 0; l < d; ++l) {
                Expr t;
                for (int k = 0; k < d; ++k)
                    t += rhs[static_cast<size_t>(k)] *
                         ginv[static_cast<size_t>(k)][static_cast<size_t>(l)];
                gamma[static_cast<size_t>((i * d + j) * d + l)] = half * t;
            }
        }
    }
    Connection conn(m, std::move(gamma));

    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                Expr torsion =
                    conn.gamma(i, j, k) - conn.gamma(j, i, k) - m.structure_constant(i, j, k);
                if (!torsion.is_zero())
                    throw std::logic_error("Levi-Civita construction is not torsion-free");
            }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                Expr compat = m.dir_deriv(i, g[static_cast<size_t>(j)][static_cast<size_t>(k)]);
                for (int l = 0; l < d; ++l)
                    compat -=
                        conn.gamma(i, j, l) * g[static_cast<size_t>(l)][static_cast<size_t>(k)] +
                        conn.gamma(i, k, l) * g[static_cast<size_t>(j)][static_cast<size_t>(l)];
                if (!compat.is_zero())
                    throw std::logic_error("Levi-Civita construction is not metric-compatible");
            }
    return conn;
}

Field Connection::covariant_derivative(int i, const Field& v) const {
    Field out(static_cast<size_t>(d_));
    for (int k = 0; k < d_; ++k) {
        Expr t = m_->dir_deriv(i, v[static_cast<size_t>(k)]);
        for (int j = 0; j < d_; ++j) t += v[static_cast<size_t>(j)] * gamma(i, j, k);
        out[static_cast<size_t>(k)] = t;
    }
    return out;
}

Field add_fields(const Field& a, const Field& b) {
    Field out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Field sub_fields(const Field& a, const Field& b) {
    Field out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Field scale_field(const Expr& s, const Field& v) {
    Field out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

bool field_is_zero(const Field& v) {
    for (const auto& e : v)
        if (!e.is_zero()) return false;
    return true;
}

} // namespace tsgeo::geom
