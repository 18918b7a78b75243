#ifndef TSGEO_FLOW_HPP
#define TSGEO_FLOW_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace tsgeo::flow {

using Matrix = Eigen::MatrixXd;

/// Real structure constants c[i][j][k] with [e_i,e_j] = sum_k c[i][j][k] e_k.
class StructureConstants {
public:
    StructureConstants(int dim, std::vector<double> values); // values indexed (i*d+j)*d+k

    int dim() const { return d_; }
    double at(int i, int j, int k) const { return v_[size_t((i * d_ + j) * d_ + k)]; }

    /// max |c[i][j][k] + c[j][i][k]|
    double antisymmetry_residual() const;
    /// max Jacobi residual over all index triples
    double jacobi_residual() const;

private:
    int d_;
    std::vector<double> v_;
};

struct SingularMetric : std::runtime_error {
    explicit SingularMetric(const std::string& msg) : std::runtime_error(msg) {}
};

/// Ricci tensor of a left-invariant metric from the bracket-only Koszul
/// terms (the derivative terms vanish for spatially constant frame metrics);
/// the trace convention matches the symbolic curvature module.
Matrix ricci_numeric(const StructureConstants& c, const Matrix& g);

/// Scalar curvature trace(g^{-1} Ric).
double scalar_curvature_numeric(const StructureConstants& c, const Matrix& g);

enum class FlowKind { hyperbolic, conformal };

struct FlowProblem {
    StructureConstants c;
    Matrix g0;
    Matrix k0;
    FlowKind kind = FlowKind::hyperbolic;
    double pressure = 0.0; // used by the conformal kind only
    double dt = 1e-3;
    int steps = 0;

    /// Validates symmetry/invertibility of g0, antisymmetry and the Jacobi
    /// identity of c (residuals below 1e-12). Throws std::invalid_argument.
    void validate() const;
};

struct FlowSample {
    double t = 0.0;
    Matrix g, k;
    double symmetry_drift = 0.0; // max |g - g^T| before re-symmetrization
    double det = 0.0;
    int positive_eigenvalues = 0;
    int negative_eigenvalues = 0;
    double scalar = 0.0;            // r(g)
    double einstein_residual = 0.0; // ||Ric - (r/d) g||_F
};

struct FlowTrajectory {
    std::vector<FlowSample> samples;
    bool degenerated = false;
    std::string halt_reason; // set when the run stopped before t_max
};

/// One classical RK4 step of g' = k, k' = -2 Ric(g) (conformal kind adds
/// -(p + 2/d) g). Output matrices are symmetrized. Throws SingularMetric if
/// a stage metric degenerates.
std::pair<Matrix, Matrix> step_rk4(const StructureConstants& c, const Matrix& g, const Matrix& k,
                                   double dt, FlowKind kind, double pressure);

/// Integrate the flow with per-sample diagnostics. Halts early (with reason)
/// when |det g| < 1e-12, when the metric signature changes, or when a stage
/// metric degenerates.
FlowTrajectory integrate(const FlowProblem& problem);

/// max over samples of ||g(t) - sigma(t) g0||_F / ||g0||_F with
/// sigma(t) = 1 + lambda t - mu t^2.
double self_similar_deviation(const FlowTrajectory& traj, const Matrix& g0, double lambda,
                              double mu);

/// CSV rows: t, upper-triangle of g (row-major), upper-triangle of k, det,
/// r, einstein_residual.
std::string trajectory_csv(const FlowTrajectory& traj);

} // namespace tsgeo::flow

#endif
