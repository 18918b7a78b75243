#ifndef TSGEO_CONTACT_STRUCTURE_HPP
#define TSGEO_CONTACT_STRUCTURE_HPP

#include "tsgeo/frame_geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsgeo::geom {

/// Exterior-derivative normalization. `full` is the bare alternating sum
/// (d_eta(X,Y) = X eta(Y) - Y eta(X) - eta([X,Y])); `half` divides a p-form's
/// derivative by p+1 (1/2 for 1-forms, 1/3 for 2-forms).
enum class DConvention { half, full };

struct AxiomViolation {
    std::string equation; // which structure axiom failed
    int i, j;             // offending index pair (-1 where not applicable)
    std::string residual; // printed residual
};

/// Lorentzian almost-contact data (phi, xi, eta, g) on a frame manifold.
/// eta is always derived from xi and g via eta(X) = -g(X, xi). Construction
/// always succeeds; axiom violations are collected, not thrown.
class ContactStructure {
public:
    /// phi stored column-wise: column j holds the frame components of phi(e_j).
    static ContactStructure attach(const FrameManifold& m, const Connection& conn,
                                   ExprMatrix phi, Field xi);

    bool valid() const { return violations_.empty(); }
    const std::vector<AxiomViolation>& violations() const { return violations_; }

    const FrameManifold& manifold() const { return *m_; }
    const Connection& connection() const { return *conn_; }
    const ExprMatrix& phi() const { return phi_; }
    const Field& xi() const { return xi_; }
    /// eta[i] = eta(e_i)
    const std::vector<Expr>& eta() const { return eta_; }

    Field apply_phi(const Field& v) const;
    Expr eta_of(const Field& v) const;
    /// Phi(e_i, e_j) = g(e_i, phi e_j)
    Expr fundamental_two_form(int i, int j) const;

private:
    ContactStructure(const FrameManifold& m, const Connection& conn, ExprMatrix phi, Field xi);
    void run_axiom_checks();

    const FrameManifold* m_;
    const Connection* conn_;
    ExprMatrix phi_;
    Field xi_;
    std::vector<Expr> eta_;
    std::vector<AxiomViolation> violations_;
};

struct ResidualEntry {
    std::string where;
    std::string value;
};

struct TransSasakianReport {
    Expr alpha;
    Expr beta;
    bool alpha_constant = false;
    bool beta_constant = false;
    int probe = -1; // frame index used for extraction
    int checked = 0;
    std::vector<ResidualEntry> failures;
    bool pass = false;
};

struct NoProbeVector : std::runtime_error {
    explicit NoProbeVector(const std::string& msg) : std::runtime_error(msg) {}
};

/// Extract (alpha, beta) from a probe frame vector with eta = 0, then verify
/// the covariant-derivative identities for phi, xi and eta on all frame
/// pairs. Throws NoProbeVector when no frame vector qualifies.
TransSasakianReport extract_trans_sasakian(const ContactStructure& cs);

struct NormalityReport {
    DConvention convention = DConvention::half;
    bool all_vanish = false;
    std::vector<ResidualEntry> failures;
    std::vector<std::vector<Field>> n1; // [i][j]
    std::vector<std::vector<Expr>> n2;  // [i][j]
    std::vector<Field> n3;              // [i]
    std::vector<Expr> n4;               // [i]
};

/// The four normality tensors on all frame pairs, with Lie derivatives
/// expanded through field brackets.
NormalityReport normality_tensors(const ContactStructure& cs, DConvention conv);

struct OubinaReport {
    DConvention convention = DConvention::half;
    bool d_eta_matches = false; // d eta = alpha Phi
    bool d_phi_matches = false; // d Phi = 2 beta eta ^ Phi
    std::vector<ResidualEntry> failures;
};

/// Residuals of the two differential-form conditions under the chosen
/// convention; alpha and beta must already be extracted.
OubinaReport oubina_check(const ContactStructure& cs, const Expr& alpha, const Expr& beta,
                          DConvention conv);

} // namespace tsgeo::geom

#endif
