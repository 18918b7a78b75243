#include "tsgeo/contact_structure.hpp"

namespace tsgeo::geom {

namespace {

Expr delta(int i, int j) { return i == j ? Expr::from_int(1) : Expr(); }

} // namespace

ContactStructure::ContactStructure(const FrameManifold& m, const Connection& conn, ExprMatrix phi,
                                   Field xi)
    : m_(&m), conn_(&conn), phi_(std::move(phi)), xi_(std::move(xi)) {}

ContactStructure ContactStructure::attach(const FrameManifold& m, const Connection& conn,
                                          ExprMatrix phi, Field xi) {
    const int d = m.dim();
    if (static_cast<int>(phi.size()) != d || static_cast<int>(xi.size()) != d)
        throw BuildError("phi/xi dimension does not match the manifold");
    for (const auto& row : phi)
        if (static_cast<int>(row.size()) != d) throw BuildError("phi must be square");

    ContactStructure cs(m, conn, std::move(phi), std::move(xi));
    // eta(e_i) = -g(e_i, xi)
    cs.eta_.assign(static_cast<size_t>(d), Expr());
    for (int i = 0; i < d; ++i) {
        Expr t;
        for (int j = 0; j < d; ++j)
            t -= m.metric()[size_t(i)][size_t(j)] * cs.xi_[size_t(j)];
        cs.eta_[size_t(i)] = t;
    }
    cs.run_axiom_checks();
    return cs;
}

void ContactStructure::run_axiom_checks() {
    const int d = m_->dim();
    const auto& g = m_->metric();
    const Coords& coords = m_->coords();
    auto record = [&](const std::string& eq, int i, int j, const Expr& residual) {
        if (!residual.is_zero())
            violations_.push_back({eq, i, j, residual.str(coords)});
    };

    // g(xi, xi) = -1 (checked first: a wrong signature breaks everything else)
    record("g(xi, xi) = -1", -1, -1, m_->pair(xi_, xi_) + Expr::from_int(1));
    // eta(xi) = 1
    {
        Expr t = Expr::from_int(-1);
        for (int i = 0; i < d; ++i) t += eta_[size_t(i)] * xi_[size_t(i)];
        record("eta(xi) = 1", -1, -1, t);
    }
    // phi^2 = -I + xi (x) eta
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Expr t = delta(i, j) - xi_[size_t(i)] * eta_[size_t(j)];
            for (int k = 0; k < d; ++k) t += phi_[size_t(i)][size_t(k)] * phi_[size_t(k)][size_t(j)];
            record("phi^2 = -I + eta (x) xi", i, j, t);
        }
    // phi(xi) = 0
    for (int i = 0; i < d; ++i) {
        Expr t;
        for (int j = 0; j < d; ++j) t += phi_[size_t(i)][size_t(j)] * xi_[size_t(j)];
        record("phi(xi) = 0", i, -1, t);
    }
    // eta o phi = 0
    for (int j = 0; j < d; ++j) {
        Expr t;
        for (int i = 0; i < d; ++i) t += eta_[size_t(i)] * phi_[size_t(i)][size_t(j)];
        record("eta o phi = 0", j, -1, t);
    }
    // g(phi X, phi Y) = g(X, Y) + eta(X) eta(Y)
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Expr t = -g[size_t(i)][size_t(j)] - eta_[size_t(i)] * eta_[size_t(j)];
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    t += phi_[size_t(k)][size_t(i)] * g[size_t(k)][size_t(l)] *
                         phi_[size_t(l)][size_t(j)];
            record("g(phi X, phi Y) = g(X, Y) + eta(X) eta(Y)", i, j, t);
        }
    // g(X, phi Y) = -g(phi X, Y)
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Expr t;
            for (int k = 0; k < d; ++k)
                t += g[size_t(i)][size_t(k)] * phi_[size_t(k)][size_t(j)] +
                     phi_[size_t(k)][size_t(i)] * g[size_t(k)][size_t(j)];
            record("g(X, phi Y) = -g(phi X, Y)", i, j, t);
        }
}

Field ContactStructure::apply_phi(const Field& v) const {
    const int d = m_->dim();
    Field out(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        Expr t;
        for (int j = 0; j < d; ++j) t += phi_[size_t(i)][size_t(j)] * v[size_t(j)];
        out[size_t(i)] = t;
    }
    return out;
}

Expr ContactStructure::eta_of(const Field& v) const {
    Expr t;
    for (size_t i = 0; i < v.size(); ++i) t += eta_[i] * v[i];
    return t;
}

Expr ContactStructure::fundamental_two_form(int i, int j) const {
    Expr t;
    const int d = m_->dim();
    for (int k = 0; k < d; ++k)
        t += m_->metric()[size_t(i)][size_t(k)] * phi_[size_t(k)][size_t(j)];
    return t;
}

TransSasakianReport extract_trans_sasakian(const ContactStructure& cs) {
    const FrameManifold& m = cs.manifold();
    const Connection& conn = cs.connection();
    const int d = m.dim();
    const Coords& coords = m.coords();

    int probe = -1;
    for (int i = 0; i < d; ++i) {
        Field ei = m.frame_field(i);
        if (cs.eta()[size_t(i)].is_zero() && !m.pair(ei, ei).is_zero() &&
            !field_is_zero(cs.apply_phi(ei))) {
            probe = i;
            break;
        }
    }
    if (probe < 0)
        throw NoProbeVector("no frame vector with eta = 0, g(e,e) != 0 and phi e != 0");

    TransSasakianReport rep;
    rep.probe = probe;
    Field ep = m.frame_field(probe);
    Field phi_ep = cs.apply_phi(ep);
    Field nab_xi = conn.covariant_derivative(probe, cs.xi());
    rep.alpha = m.pair(nab_xi, phi_ep) / m.pair(phi_ep, phi_ep);
    rep.beta = m.pair(nab_xi, ep) / m.pair(ep, ep);

    rep.alpha_constant = rep.alpha.is_constant();
    rep.beta_constant = rep.beta.is_constant();
    // allow non-constant alpha/beta: constancy is reported, identities are
    // still checked pointwise (exactly)

    auto record = [&](const std::string& where, const Expr& residual) {
        ++rep.checked;
        if (!residual.is_zero()) rep.failures.push_back({where, residual.str(coords)});
    };

    for (int i = 0; i < d; ++i) {
        Field ei = m.frame_field(i);
        Field phi_ei = cs.apply_phi(ei);
        // nabla_{e_i} xi = alpha phi e_i + beta (e_i - eta(e_i) xi)
        Field lhs_xi = conn.covariant_derivative(i, cs.xi());
        Field rhs_xi = add_fields(
            scale_field(rep.alpha, phi_ei),
            scale_field(rep.beta, sub_fields(ei, scale_field(cs.eta()[size_t(i)], cs.xi()))));
        for (int k = 0; k < d; ++k)
            record("nabla_xi at X=e" + std::to_string(i + 1) + " component " + std::to_string(k + 1),
                   lhs_xi[size_t(k)] - rhs_xi[size_t(k)]);

        for (int j = 0; j < d; ++j) {
            Field ej = m.frame_field(j);
            // (nabla_{e_i} phi)(e_j) = alpha[eta(e_j) e_i + g(e_i,e_j) xi]
            //                        - beta[eta(e_j) phi e_i + g(phi e_i, e_j) xi]
            Field dphi = sub_fields(conn.covariant_derivative(i, cs.apply_phi(ej)),
                                    cs.apply_phi(conn.covariant_derivative(i, ej)));
            Field rhs = sub_fields(
                add_fields(scale_field(rep.alpha * cs.eta()[size_t(j)], ei),
                           scale_field(rep.alpha * m.pair(ei, ej), cs.xi())),
                add_fields(scale_field(rep.beta * cs.eta()[size_t(j)], phi_ei),
                           scale_field(rep.beta * m.pair(phi_ei, ej), cs.xi())));
            for (int k = 0; k < d; ++k)
                record("nabla_phi at (e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) +
                           ") component " + std::to_string(k + 1),
                       dphi[size_t(k)] - rhs[size_t(k)]);

            // (nabla_{e_i} eta)(e_j) = alpha g(e_i, phi e_j) - beta g(phi e_i, phi e_j)
            Expr deta = m.dir_deriv(i, cs.eta()[size_t(j)]);
            for (int k = 0; k < d; ++k) deta -= conn.gamma(i, j, k) * cs.eta()[size_t(k)];
            Expr rhs_eta = rep.alpha * m.pair(ei, cs.apply_phi(ej)) -
                           rep.beta * m.pair(phi_ei, cs.apply_phi(ej));
            record("nabla_eta at (e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")",
                   deta - rhs_eta);
        }
    }
    rep.pass = rep.failures.empty();
    return rep;
}

NormalityReport normality_tensors(const ContactStructure& cs, DConvention conv) {
    const FrameManifold& m = cs.manifold();
    const int d = m.dim();
    const Coords& coords = m.coords();
    const Expr factor1 =
        conv == DConvention::half ? Expr::from_rational(Rational(1, 2)) : Expr::from_int(1);

    NormalityReport rep;
    rep.convention = conv;
    rep.n1.assign(size_t(d), std::vector<Field>(size_t(d)));
    rep.n2.assign(size_t(d), std::vector<Expr>(size_t(d)));
    rep.n3.resize(size_t(d));
    rep.n4.resize(size_t(d));

    auto lie_eta = [&](const Field& v, const Field& x) {
        // (L_V eta)(X) = V(eta(X)) - eta([V, X])
        return m.field_deriv(v, cs.eta_of(x)) - cs.eta_of(m.bracket(v, x));
    };

    for (int i = 0; i < d; ++i) {
        Field ei = m.frame_field(i);
        for (int j = 0; j < d; ++j) {
            Field ej = m.frame_field(j);
            // Nijenhuis [phi,phi](X,Y) = phi^2[X,Y] + [phiX,phiY] - phi[phiX,Y] - phi[X,phiY]
            Field br = m.bracket(ei, ej);
            Field nij = add_fields(cs.apply_phi(cs.apply_phi(br)),
                                   m.bracket(cs.apply_phi(ei), cs.apply_phi(ej)));
            nij = sub_fields(nij, cs.apply_phi(m.bracket(cs.apply_phi(ei), ej)));
            nij = sub_fields(nij, cs.apply_phi(m.bracket(ei, cs.apply_phi(ej))));
            // d eta(X,Y) under the chosen convention
            Expr deta = factor1 * (m.dir_deriv(i, cs.eta()[size_t(j)]) -
                                   m.dir_deriv(j, cs.eta()[size_t(i)]) - cs.eta_of(br));
            rep.n1[size_t(i)][size_t(j)] =
                add_fields(nij, scale_field(Expr::from_int(2) * deta, cs.xi()));

            rep.n2[size_t(i)][size_t(j)] =
                lie_eta(cs.apply_phi(ei), ej) - lie_eta(cs.apply_phi(ej), ei);
        }
        // N3(X) = (L_xi phi)X = [xi, phi X] - phi[xi, X]
        rep.n3[size_t(i)] = sub_fields(m.bracket(cs.xi(), cs.apply_phi(ei)),
                                       cs.apply_phi(m.bracket(cs.xi(), ei)));
        rep.n4[size_t(i)] = lie_eta(cs.xi(), ei);
    }

    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k)
                if (!rep.n1[size_t(i)][size_t(j)][size_t(k)].is_zero())
                    rep.failures.push_back(
                        {"N1(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")",
                         rep.n1[size_t(i)][size_t(j)][size_t(k)].str(coords)});
            if (!rep.n2[size_t(i)][size_t(j)].is_zero())
                rep.failures.push_back(
                    {"N2(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")",
                     rep.n2[size_t(i)][size_t(j)].str(coords)});
        }
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k)
            if (!rep.n3[size_t(i)][size_t(k)].is_zero())
                rep.failures.push_back(
                    {"N3(e" + std::to_string(i + 1) + ")", rep.n3[size_t(i)][size_t(k)].str(coords)});
        if (!rep.n4[size_t(i)].is_zero())
            rep.failures.push_back(
                {"N4(e" + std::to_string(i + 1) + ")", rep.n4[size_t(i)].str(coords)});
    }
    rep.all_vanish = rep.failures.empty();
    return rep;
}

OubinaReport oubina_check(const ContactStructure& cs, const Expr& alpha, const Expr& beta,
                          DConvention conv) {
    const FrameManifold& m = cs.manifold();
    const int d = m.dim();
    const Coords& coords = m.coords();
    const Expr f1 =
        conv == DConvention::half ? Expr::from_rational(Rational(1, 2)) : Expr::from_int(1);
    const Expr f2 =
        conv == DConvention::half ? Expr::from_rational(Rational(1, 3)) : Expr::from_int(1);

    OubinaReport rep;
    rep.convention = conv;
    rep.d_eta_matches = true;
    rep.d_phi_matches = true;

    // d eta = alpha Phi on all frame pairs
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Field br = m.bracket(m.frame_field(i), m.frame_field(j));
            Expr deta = f1 * (m.dir_deriv(i, cs.eta()[size_t(j)]) -
                              m.dir_deriv(j, cs.eta()[size_t(i)]) - cs.eta_of(br));
            Expr residual = deta - alpha * cs.fundamental_two_form(i, j);
            if (!residual.is_zero()) {
                rep.d_eta_matches = false;
                rep.failures.push_back({"d_eta vs alpha*Phi at (e" + std::to_string(i + 1) + ",e" +
                                            std::to_string(j + 1) + ")",
                                        residual.str(coords)});
            }
        }

    // d Phi = 2 beta eta ^ Phi on all frame triples;
    // (eta ^ Phi)(X,Y,Z) = eta(X)Phi(Y,Z) - eta(Y)Phi(X,Z) + eta(Z)Phi(X,Y)
    auto phi2f = [&](const Field& v, const Field& w) {
        Expr t;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                t += v[size_t(a)] * w[size_t(b)] * cs.fundamental_two_form(a, b);
        return t;
    };
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                Field ei = m.frame_field(i), ej = m.frame_field(j), ek = m.frame_field(k);
                Expr dphi = m.dir_deriv(i, cs.fundamental_two_form(j, k)) -
                            m.dir_deriv(j, cs.fundamental_two_form(i, k)) +
                            m.dir_deriv(k, cs.fundamental_two_form(i, j));
                dphi -= phi2f(m.bracket(ei, ej), ek);
                dphi += phi2f(m.bracket(ei, ek), ej);
                dphi -= phi2f(m.bracket(ej, ek), ei);
                dphi = f2 * dphi;
                Expr wedge = cs.eta()[size_t(i)] * cs.fundamental_two_form(j, k) -
                             cs.eta()[size_t(j)] * cs.fundamental_two_form(i, k) +
                             cs.eta()[size_t(k)] * cs.fundamental_two_form(i, j);
                Expr residual = dphi - Expr::from_int(2) * beta * wedge;
                if (!residual.is_zero()) {
                    rep.d_phi_matches = false;
                    rep.failures.push_back({"d_Phi vs 2*beta*eta^Phi at (e" + std::to_string(i + 1) +
                                                ",e" + std::to_string(j + 1) + ",e" +
                                                std::to_string(k + 1) + ")",
                                            residual.str(coords)});
                }
            }
    return rep;
}

} // namespace tsgeo::geom
