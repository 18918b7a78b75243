#include "tsgeo/flow.hpp"

#include <cmath>
#include <sstream>

namespace tsgeo::flow {

StructureConstants::StructureConstants(int dim, std::vector<double> values)
    : d_(dim), v_(std::move(values)) {
    if (static_cast<int>(v_.size()) != dim * dim * dim)
        throw std::invalid_argument("structure constants need d^3 entries");
}

double StructureConstants::antisymmetry_residual() const {
    double worst = 0.0;
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
            for (int k = 0; k < d_; ++k)
                worst = std::max(worst, std::abs(at(i, j, k) + at(j, i, k)));
    return worst;
}

double StructureConstants::jacobi_residual() const {
    // [[e_i,e_j],e_k] cyclic: sum_m c[i][j][m] c[m][k][l] + cyclic = 0
    double worst = 0.0;
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
            for (int k = 0; k < d_; ++k)
                for (int l = 0; l < d_; ++l) {
                    double s = 0.0;
                    for (int mdx = 0; mdx < d_; ++mdx) {
                        s += at(i, j, mdx) * at(mdx, k, l);
                        s += at(j, k, mdx) * at(mdx, i, l);
                        s += at(k, i, mdx) * at(mdx, j, l);
                    }
                    worst = std::max(worst, std::abs(s));
                }
    return worst;
}

Matrix ricci_numeric(const StructureConstants& c, const Matrix& g) {
    const int d = c.dim();
    if (std::abs(g.determinant()) < 1e-12) throw SingularMetric("metric is numerically singular");
    const Matrix ginv = g.inverse();

    // 2 g(nabla_i e_j, e_k) = -g(e_i,[e_j,e_k]) - g(e_j,[e_i,e_k]) + g(e_k,[e_i,e_j])
    auto gbr = [&](int a, int b, int cc) {
        double s = 0.0;
        for (int l = 0; l < d; ++l) s += c.at(b, cc, l) * g(a, l);
        return s;
    };
    std::vector<double> gamma(size_t(d * d * d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            for (int l = 0; l < d; ++l) {
                double s = 0.0;
                for (int k = 0; k < d; ++k)
                    s += (-gbr(i, j, k) - gbr(j, i, k) + gbr(k, i, j)) * ginv(k, l);
                gamma[size_t((i * d + j) * d + l)] = 0.5 * s;
            }
        }
    auto G = [&](int i, int j, int l) { return gamma[size_t((i * d + j) * d + l)]; };

    // Riem[i][j][k][l] = sum_m G[j][k][m] G[i][m][l] - G[i][k][m] G[j][m][l]
    //                    - c[i][j][m] G[m][k][l]
    Matrix ric = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) {
                double riem = 0.0;
                for (int mdx = 0; mdx < d; ++mdx)
                    riem += G(j, k, mdx) * G(i, mdx, i) - G(i, k, mdx) * G(j, mdx, i) -
                            c.at(i, j, mdx) * G(mdx, k, i);
                s += riem;
            }
            ric(j, k) = s;
        }
    return ric;
}

double scalar_curvature_numeric(const StructureConstants& c, const Matrix& g) {
    return (g.inverse() * ricci_numeric(c, g)).trace();
}

void FlowProblem::validate() const {
    const int d = c.dim();
    if (g0.rows() != d || g0.cols() != d || k0.rows() != d || k0.cols() != d)
        throw std::invalid_argument("g0/k0 must be d x d");
    if ((g0 - g0.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("g0 must be symmetric");
    if ((k0 - k0.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("k0 must be symmetric");
    if (g0.determinant() == 0.0)
        throw std::invalid_argument("g0 must be nonsingular");
    if (c.antisymmetry_residual() > 1e-12)
        throw std::invalid_argument("structure constants must be antisymmetric");
    if (c.jacobi_residual() > 1e-12)
        throw std::invalid_argument("structure constants violate the Jacobi identity");
    if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
    if (steps < 0) throw std::invalid_argument("negative step count");
}

namespace {

Matrix forcing(const StructureConstants& c, const Matrix& g, FlowKind kind, double pressure) {
    Matrix f = -2.0 * ricci_numeric(c, g);
    if (kind == FlowKind::conformal)
        f -= (pressure + 2.0 / static_cast<double>(c.dim())) * g;
    return f;
}

void signature_of(const Matrix& g, int& pos, int& neg) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    pos = neg = 0;
    for (int i = 0; i < g.rows(); ++i) {
        if (es.eigenvalues()(i) > 0)
            ++pos;
        else if (es.eigenvalues()(i) < 0)
            ++neg;
    }
}

FlowSample make_sample(const StructureConstants& c, double t, const Matrix& graw,
                       const Matrix& k) {
    FlowSample s;
    s.t = t;
    s.symmetry_drift = (graw - graw.transpose()).cwiseAbs().maxCoeff();
    s.g = 0.5 * (graw + graw.transpose());
    s.k = 0.5 * (k + k.transpose());
    s.det = s.g.determinant();
    signature_of(s.g, s.positive_eigenvalues, s.negative_eigenvalues);
    if (std::abs(s.det) >= 1e-12) {
        const Matrix ric = ricci_numeric(c, s.g);
        s.scalar = (s.g.inverse() * ric).trace();
        s.einstein_residual =
            (ric - (s.scalar / static_cast<double>(c.dim())) * s.g).norm();
    }
    return s;
}

} // namespace

std::pair<Matrix, Matrix> step_rk4(const StructureConstants& c, const Matrix& g, const Matrix& k,
                                   double dt, FlowKind kind, double pressure) {
    const Matrix k1g = k;
    const Matrix k1k = forcing(c, g, kind, pressure);
    const Matrix k2g = k + 0.5 * dt * k1k;
    const Matrix k2k = forcing(c, g + 0.5 * dt * k1g, kind, pressure);
    const Matrix k3g = k + 0.5 * dt * k2k;
    const Matrix k3k = forcing(c, g + 0.5 * dt * k2g, kind, pressure);
    const Matrix k4g = k + dt * k3k;
    const Matrix k4k = forcing(c, g + dt * k3g, kind, pressure);
    Matrix gn = g + dt / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    Matrix kn = k + dt / 6.0 * (k1k + 2.0 * k2k + 2.0 * k3k + k4k);
    gn = 0.5 * (gn + gn.transpose()).eval();
    kn = 0.5 * (kn + kn.transpose()).eval();
    return {gn, kn};
}

FlowTrajectory integrate(const FlowProblem& problem) {
    problem.validate();
    FlowTrajectory traj;
    Matrix g = problem.g0, k = problem.k0;

    FlowSample first = make_sample(problem.c, 0.0, g, k);
    if (std::abs(first.det) < 1e-12) {
        traj.degenerated = true;
        traj.halt_reason = "metric degenerate at t = 0";
        traj.samples.push_back(first);
        return traj;
    }
    traj.samples.push_back(first);
    const int pos0 = first.positive_eigenvalues, neg0 = first.negative_eigenvalues;

    for (int n = 0; n < problem.steps; ++n) {
        std::pair<Matrix, Matrix> next;
        try {
            next = step_rk4(problem.c, g, k, problem.dt, problem.kind, problem.pressure);
        } catch (const SingularMetric&) {
            traj.degenerated = true;
            traj.halt_reason = "stage metric singular at t = " +
                               std::to_string((n + 1) * problem.dt);
            return traj;
        }
        g = next.first;
        k = next.second;
        FlowSample s = make_sample(problem.c, (n + 1) * problem.dt, g, k);
        traj.samples.push_back(s);
        if (std::abs(s.det) < 1e-12) {
            traj.degenerated = true;
            traj.halt_reason = "determinant below 1e-12 at t = " + std::to_string(s.t);
            return traj;
        }
        if (s.positive_eigenvalues != pos0 || s.negative_eigenvalues != neg0) {
            traj.degenerated = true;
            traj.halt_reason = "signature changed at t = " + std::to_string(s.t);
            return traj;
        }
    }
    return traj;
}

double self_similar_deviation(const FlowTrajectory& traj, const Matrix& g0, double lambda,
                              double mu) {
    const double ref = g0.norm();
    double worst = 0.0;
    for (const auto& s : traj.samples) {
        const double sigma = 1.0 + lambda * s.t - mu * s.t * s.t;
        worst = std::max(worst, (s.g - sigma * g0).norm() / ref);
    }
    return worst;
}

std::string trajectory_csv(const FlowTrajectory& traj) {
    std::ostringstream os;
    os.precision(17);
    const int d = traj.samples.empty() ? 0 : static_cast<int>(traj.samples.front().g.rows());
    os << "t";
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) os << ",g" << i + 1 << j + 1;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) os << ",k" << i + 1 << j + 1;
    os << ",det,r,einstein_residual\n";
    for (const auto& s : traj.samples) {
        os << s.t;
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) os << "," << s.g(i, j);
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) os << "," << s.k(i, j);
        os << "," << s.det << "," << s.scalar << "," << s.einstein_residual << "\n";
    }
    return os.str();
}

} // namespace tsgeo::flow
