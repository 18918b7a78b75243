#ifndef TSGEO_CURVATURE_HPP
#define TSGEO_CURVATURE_HPP

#include "tsgeo/contact_structure.hpp"
#include "tsgeo/frame_geometry.hpp"

#include <string>
#include <vector>

namespace tsgeo::geom {

/// Sign of the Ricci trace. `standard` takes S(Y,Z) as the trace of
/// X -> R(X,Y)Z through the inverse metric; `flipped` negates it (audit aid).
enum class RicciConvention { standard, flipped };

/// Riemann, Ricci and scalar curvature of a Levi-Civita connection, exact.
/// Component conventions: riem(i,j,k,l) is the e_l component of R(e_i,e_j)e_k
/// and r4(i,j,k,l) = g(R(e_i,e_j)e_k, e_l).
class CurvatureData {
public:
    static CurvatureData compute(const Connection& conn,
                                 RicciConvention convention = RicciConvention::standard);

    const FrameManifold& manifold() const { return *m_; }
    const Connection& connection() const { return *conn_; }
    RicciConvention convention() const { return convention_; }

    const Expr& riem(int i, int j, int k, int l) const { return riem_[idx(i, j, k, l)]; }
    const Expr& r4(int i, int j, int k, int l) const { return r4_[idx(i, j, k, l)]; }
    const Expr& ricci(int j, int k) const { return ric_[size_t(j * d_ + k)]; }
    const Expr& scalar() const { return scalar_; }

    /// R(X,Y)Z by multilinear expansion (all slots are tensorial).
    Field curvature_field(const Field& x, const Field& y, const Field& z) const;
    /// g(R(X,Y)Z, W) by multilinear expansion.
    Expr r4_field(const Field& x, const Field& y, const Field& z, const Field& w) const;

private:
    CurvatureData(const Connection& conn, RicciConvention convention)
        : m_(&conn.manifold()), conn_(&conn), d_(conn.manifold().dim()),
          convention_(convention) {}
    size_t idx(int i, int j, int k, int l) const {
        return size_t(((i * d_ + j) * d_ + k) * d_ + l);
    }

    const FrameManifold* m_;
    const Connection* conn_;
    int d_;
    RicciConvention convention_;
    std::vector<Expr> riem_, r4_, ric_;
    Expr scalar_;
};

struct DegenerateProbe : std::runtime_error {
    explicit DegenerateProbe(const std::string& msg) : std::runtime_error(msg) {}
};

/// phi-sectional curvature c(X) = -g(R(X,phiX)X, phiX) / g(X,X)^2 for a probe
/// with eta(X) = 0, g(X,X) != 0 and phi X != 0. Throws DegenerateProbe.
Expr phi_sectional(const CurvatureData& cd, const ContactStructure& cs, const Field& x);

struct PhiSectionalReport {
    Expr value;                    // from the first admissible probe
    bool constant_on_probes = false;
    int probes_checked = 0;
};

/// c(X) over the structural probe set (eta-annihilated frame vectors and
/// their pairwise sums); full constancy is not decidable from one chart, so
/// only probe constancy is reported.
PhiSectionalReport phi_sectional_constancy(const CurvatureData& cd, const ContactStructure& cs);

/// Space-form model tensor: the closed-form curvature a trans-Sasakian space
/// form with constant (alpha, beta) and phi-sectional constant c must have,
/// evaluated on all frame triples. model[idx(i,j,k,l)] is the e_l component
/// of the model R(e_i,e_j)e_k. Inputs must be constants.
std::vector<Expr> space_form_model(const ContactStructure& cs, const Expr& c, const Expr& alpha,
                                   const Expr& beta);

/// Ricci tensor obtained by contracting the space-form model with the same
/// trace convention as CurvatureData.
ExprMatrix contract_model_ricci(const ContactStructure& cs, const std::vector<Expr>& model,
                                RicciConvention convention = RicciConvention::standard);

/// Printed closed-form Ricci for a (2n+1)-dimensional space form:
/// S(Y,Z) = [n c - (3n-4)(a^2-b^2)]/2 g(Y,Z) + [n(a^2-b^2+c)]/2 eta(Y)eta(Z)
///          + 2 a b g(Y, phi Z).
ExprMatrix printed_ricci_formula(const ContactStructure& cs, const Expr& c, const Expr& alpha,
                                 const Expr& beta);

struct IdentityEntry {
    std::string id;
    std::string domain;
    int checked = 0;
    bool pass = false;
    std::vector<ResidualEntry> failures;
};

struct IdentityReport {
    std::vector<IdentityEntry> entries;
    bool all_pass = false;
    const IdentityEntry* find(const std::string& id) const;
};

/// The full curvature identity suite: the Reeb-curvature identities, the six
/// phi-curvature identities on the eta-annihilated probe set, the space-form
/// model on all frame triples, both Ricci formula variants, and the tensor
/// symmetry/Bianchi/connection invariants.
IdentityReport identity_suite(const CurvatureData& cd, const ContactStructure& cs,
                              const Expr& alpha, const Expr& beta, const Expr& c);

/// (nabla_a R)(e_i,e_j)e_k by the Leibniz rule.
Field covariant_derivative_of_curvature(const CurvatureData& cd, int a, int i, int j, int k);

struct CurvatureInvariants {
    bool antisymmetry = false;
    bool pair_symmetry = false;
    bool ricci_symmetric = false;
    bool first_bianchi = false;
    bool second_bianchi = false;
    bool torsion_free = false;
    bool metric_compatible = false;
    bool all() const {
        return antisymmetry && pair_symmetry && ricci_symmetric && first_bianchi &&
               second_bianchi && torsion_free && metric_compatible;
    }
};

/// Structure-independent tensor invariants, exact on any manifold.
CurvatureInvariants check_curvature_invariants(const CurvatureData& cd);

} // namespace tsgeo::geom

#endif
