#include "tsgeo/curvature.hpp"

namespace tsgeo::geom {

CurvatureData CurvatureData::compute(const Connection& conn, RicciConvention convention) {
    const FrameManifold& m = conn.manifold();
    const int d = m.dim();
    CurvatureData cd(conn, convention);
    cd.riem_.assign(size_t(d) * size_t(d) * size_t(d) * size_t(d), Expr());
    cd.r4_ = cd.riem_;
    cd.ric_.assign(size_t(d) * size_t(d), Expr());

    // R(e_i,e_j)e_k = nabla_i nabla_j e_k - nabla_j nabla_i e_k - nabla_{[e_i,e_j]} e_k
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                Field nj(static_cast<size_t>(d)), ni(static_cast<size_t>(d));
                for (int l = 0; l < d; ++l) {
                    nj[size_t(l)] = conn.gamma(j, k, l);
                    ni[size_t(l)] = conn.gamma(i, k, l);
                }
                Field t = sub_fields(conn.covariant_derivative(i, nj),
                                     conn.covariant_derivative(j, ni));
                for (int l = 0; l < d; ++l) {
                    Expr br;
                    for (int a = 0; a < d; ++a)
                        br += m.structure_constant(i, j, a) * conn.gamma(a, k, l);
                    t[size_t(l)] -= br;
                }
                for (int l = 0; l < d; ++l) {
                    cd.riem_[cd.idx(i, j, k, l)] = t[size_t(l)];
                    cd.riem_[cd.idx(j, i, k, l)] = -t[size_t(l)];
                }
            }
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    Expr t;
                    for (int a = 0; a < d; ++a)
                        t += cd.riem_[cd.idx(i, j, k, a)] *
                             m.metric()[size_t(a)][size_t(l)];
                    cd.r4_[cd.idx(i, j, k, l)] = t;
                }

    // S(Y,Z) = trace of X -> R(X,Y)Z through the inverse metric
    const auto& ginv = m.metric_inverse();
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            Expr t;
            for (int i = 0; i < d; ++i)
                for (int l = 0; l < d; ++l)
                    t += ginv[size_t(i)][size_t(l)] * cd.r4_[cd.idx(i, j, k, l)];
            if (convention == RicciConvention::flipped) t = -t;
            cd.ric_[size_t(j * d + k)] = t;
        }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            cd.scalar_ += ginv[size_t(i)][size_t(j)] * cd.ric_[size_t(i * d + j)];
    return cd;
}

Field CurvatureData::curvature_field(const Field& x, const Field& y, const Field& z) const {
    Field out(static_cast<size_t>(d_));
    for (int l = 0; l < d_; ++l) {
        Expr t;
        for (int i = 0; i < d_; ++i) {
            if (x[size_t(i)].is_zero()) continue;
            for (int j = 0; j < d_; ++j) {
                if (y[size_t(j)].is_zero()) continue;
                for (int k = 0; k < d_; ++k) {
                    if (z[size_t(k)].is_zero()) continue;
                    t += x[size_t(i)] * y[size_t(j)] * z[size_t(k)] * riem(i, j, k, l);
                }
            }
        }
        out[size_t(l)] = t;
    }
    return out;
}

Expr CurvatureData::r4_field(const Field& x, const Field& y, const Field& z,
                             const Field& w) const {
    return m_->pair(curvature_field(x, y, z), w);
}

Expr phi_sectional(const CurvatureData& cd, const ContactStructure& cs, const Field& x) {
    const FrameManifold& m = cd.manifold();
    if (!cs.eta_of(x).is_zero())
        throw DegenerateProbe("probe is not annihilated by eta");
    Expr gxx = m.pair(x, x);
    if (gxx.is_zero()) throw DegenerateProbe("probe has g(X,X) = 0");
    Field px = cs.apply_phi(x);
    if (field_is_zero(px)) throw DegenerateProbe("probe has phi X = 0");
    return -cd.r4_field(x, px, x, px) / (gxx * gxx);
}

PhiSectionalReport phi_sectional_constancy(const CurvatureData& cd, const ContactStructure& cs) {
    const FrameManifold& m = cd.manifold();
    const int d = m.dim();
    std::vector<Field> probes;
    std::vector<int> base;
    for (int i = 0; i < d; ++i)
        if (cs.eta()[size_t(i)].is_zero()) base.push_back(i);
    for (int i : base) probes.push_back(m.frame_field(i));
    for (size_t a = 0; a < base.size(); ++a)
        for (size_t b = a + 1; b < base.size(); ++b)
            probes.push_back(add_fields(m.frame_field(base[a]), m.frame_field(base[b])));

    PhiSectionalReport rep;
    bool have = false;
    rep.constant_on_probes = true;
    for (const auto& x : probes) {
        Expr c;
        try {
            c = phi_sectional(cd, cs, x);
        } catch (const DegenerateProbe&) {
            continue;
        }
        ++rep.probes_checked;
        if (!have) {
            rep.value = c;
            have = true;
        } else if (!(c - rep.value).is_zero()) {
            rep.constant_on_probes = false;
        }
    }
    if (!have) throw DegenerateProbe("no admissible phi-sectional probe");
    return rep;
}

std::vector<Expr> space_form_model(const ContactStructure& cs, const Expr& c, const Expr& alpha,
                                   const Expr& beta) {
    if (!c.is_constant() || !alpha.is_constant() || !beta.is_constant())
        throw std::invalid_argument("space-form model needs constant c, alpha, beta");
    const FrameManifold& m = cs.manifold();
    const int d = m.dim();
    const Expr aa = alpha * alpha - beta * beta;
    const Expr coefA = Expr::from_int(3) * aa - c;
    const Expr coefB = aa + c;
    const Expr coefC = Expr::from_int(8) * alpha * beta;
    const Expr quarter = Expr::from_rational(Rational(1, 4));

    std::vector<Expr> model(static_cast<size_t>(d) * static_cast<size_t>(d) * static_cast<size_t>(d) * static_cast<size_t>(d));
    auto idx = [d](int i, int j, int k, int l) {
        return size_t(((i * d + j) * d + k) * d + l);
    };
    for (int i = 0; i < d; ++i) {
        Field X = m.frame_field(i);
        Field pX = cs.apply_phi(X);
        const Expr& etaX = cs.eta()[size_t(i)];
        for (int j = 0; j < d; ++j) {
            Field Y = m.frame_field(j);
            Field pY = cs.apply_phi(Y);
            const Expr& etaY = cs.eta()[size_t(j)];
            for (int k = 0; k < d; ++k) {
                Field Z = m.frame_field(k);
                Field pZ = cs.apply_phi(Z);
                const Expr& etaZ = cs.eta()[size_t(k)];
                const Expr gXZ = m.metric()[size_t(i)][size_t(k)];
                const Expr gYZ = m.metric()[size_t(j)][size_t(k)];
                const Expr gXpZ = m.pair(X, pZ);
                const Expr gYpZ = m.pair(Y, pZ);
                const Expr gXpY = m.pair(X, pY);

                Field t = scale_field(coefA * gXZ, Y);
                t = sub_fields(t, scale_field(coefA * gYZ, X));

                Field grp = scale_field(etaZ * etaY, X);
                grp = sub_fields(grp, scale_field(etaZ * etaX, Y));
                grp = add_fields(grp, scale_field(etaY * gXZ - etaX * gYZ, cs.xi()));
                grp = add_fields(grp, scale_field(gXpZ, pY));
                grp = sub_fields(grp, scale_field(gYpZ, pX));
                grp = add_fields(grp, scale_field(Expr::from_int(2) * gXpY, pZ));
                t = add_fields(t, scale_field(coefB, grp));

                Field grp2 = scale_field(etaX * gYpZ - etaY * gXpZ, cs.xi());
                grp2 = add_fields(grp2, scale_field(etaZ * etaX, pY));
                grp2 = sub_fields(grp2, scale_field(etaZ * etaY, pX));
                t = add_fields(t, scale_field(coefC, grp2));

                for (int l = 0; l < d; ++l) model[idx(i, j, k, l)] = quarter * t[size_t(l)];
            }
        }
    }
    return model;
}

ExprMatrix contract_model_ricci(const ContactStructure& cs, const std::vector<Expr>& model,
                                RicciConvention convention) {
    const FrameManifold& m = cs.manifold();
    const int d = m.dim();
    const auto& g = m.metric();
    const auto& ginv = m.metric_inverse();
    auto idx = [d](int i, int j, int k, int l) {
        return size_t(((i * d + j) * d + k) * d + l);
    };
    ExprMatrix ric(static_cast<size_t>(d), std::vector<Expr>(static_cast<size_t>(d)));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            Expr t;
            for (int i = 0; i < d; ++i)
                for (int l = 0; l < d; ++l)
                    for (int a = 0; a < d; ++a)
                        t += ginv[size_t(i)][size_t(l)] * model[idx(i, j, k, a)] *
                             g[size_t(a)][size_t(l)];
            ric[size_t(j)][size_t(k)] = convention == RicciConvention::flipped ? -t : t;
        }
    return ric;
}

ExprMatrix printed_ricci_formula(const ContactStructure& cs, const Expr& c, const Expr& alpha,
                                 const Expr& beta) {
    const FrameManifold& m = cs.manifold();
    const int d = m.dim();
    const Expr n = Expr::from_rational(Rational(d - 1, 2));
    const Expr aa = alpha * alpha - beta * beta;
    const Expr half = Expr::from_rational(Rational(1, 2));
    const Expr coef_g = half * (n * c - (Expr::from_int(3) * n - Expr::from_int(4)) * aa);
    const Expr coef_eta = half * n * (aa + c);
    const Expr coef_phi = Expr::from_int(2) * alpha * beta;
    ExprMatrix ric(static_cast<size_t>(d), std::vector<Expr>(static_cast<size_t>(d)));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            ric[size_t(j)][size_t(k)] = coef_g * m.metric()[size_t(j)][size_t(k)] +
                                        coef_eta * cs.eta()[size_t(j)] * cs.eta()[size_t(k)] +
                                        coef_phi * cs.fundamental_two_form(j, k);
    return ric;
}

const IdentityEntry* IdentityReport::find(const std::string& id) const {
    for (const auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

namespace {

class SuiteBuilder {
public:
    SuiteBuilder(const CurvatureData& cd, const ContactStructure& cs, const Expr& alpha,
                 const Expr& beta, const Expr& c)
        : cd_(cd), cs_(cs), m_(cd.manifold()), conn_(cd.connection()), d_(m_.dim()),
          alpha_(alpha), beta_(beta), c_(c), aa_(alpha * alpha - beta * beta) {}

    IdentityReport run() {
        reeb_identities();
        phi_identities();
        model_identities();
        symmetry_invariants();
        bianchi_identities();
        connection_invariants();
        report_.all_pass = true;
        for (const auto& e : report_.entries) report_.all_pass = report_.all_pass && e.pass;
        return std::move(report_);
    }

private:
    IdentityEntry& entry(const std::string& id, const std::string& domain) {
        report_.entries.push_back({id, domain, 0, false, {}});
        return report_.entries.back();
    }

    void record(IdentityEntry& e, const std::string& where, const Expr& residual) {
        ++e.checked;
        if (!residual.is_zero()) e.failures.push_back({where, residual.str(m_.coords())});
    }

    void record_field(IdentityEntry& e, const std::string& where, const Field& residual) {
        ++e.checked;
        for (int k = 0; k < d_; ++k)
            if (!residual[size_t(k)].is_zero()) {
                e.failures.push_back({where + " component " + std::to_string(k + 1),
                                      residual[size_t(k)].str(m_.coords())});
            }
    }

    void finish(IdentityEntry& e) { e.pass = e.failures.empty(); }

    std::string pair_name(int i, int j) {
        return "(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")";
    }

    void reeb_identities() {
        auto& thm = entry("curvature_along_reeb", "all frame pairs");
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) {
                Field X = m_.frame_field(i), Y = m_.frame_field(j);
                Field lhs = cd_.curvature_field(X, Y, cs_.xi());
                Field rhs = scale_field(aa_, sub_fields(scale_field(cs_.eta()[size_t(j)], X),
                                                        scale_field(cs_.eta()[size_t(i)], Y)));
                Field sw = sub_fields(scale_field(cs_.eta()[size_t(i)], cs_.apply_phi(Y)),
                                      scale_field(cs_.eta()[size_t(j)], cs_.apply_phi(X)));
                rhs = add_fields(rhs, scale_field(Expr::from_int(2) * alpha_ * beta_, sw));
                record_field(thm, "at " + pair_name(i, j), sub_fields(lhs, rhs));
            }
        finish(thm);

        auto& cor = entry("curvature_reeb_first_slot", "all frame pairs");
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) {
                Field X = m_.frame_field(i), Y = m_.frame_field(j);
                Field lhs = cd_.curvature_field(cs_.xi(), X, Y);
                Field rhs = scale_field(-aa_, add_fields(scale_field(cs_.eta()[size_t(j)], X),
                                                         scale_field(m_.pair(X, Y), cs_.xi())));
                Field sw = sub_fields(scale_field(cs_.eta()[size_t(j)], cs_.apply_phi(X)),
                                      scale_field(m_.pair(X, cs_.apply_phi(Y)), cs_.xi()));
                rhs = sub_fields(rhs, scale_field(Expr::from_int(2) * alpha_ * beta_, sw));
                record_field(cor, "at " + pair_name(i, j), sub_fields(lhs, rhs));
            }
        finish(cor);
    }

    std::vector<std::pair<std::string, Field>> eta_probes() {
        std::vector<int> base;
        for (int i = 0; i < d_; ++i)
            if (cs_.eta()[size_t(i)].is_zero()) base.push_back(i);
        std::vector<std::pair<std::string, Field>> probes;
        for (int i : base) probes.emplace_back("e" + std::to_string(i + 1), m_.frame_field(i));
        for (size_t a = 0; a < base.size(); ++a)
            for (size_t b = a + 1; b < base.size(); ++b) {
                probes.emplace_back(
                    "e" + std::to_string(base[a] + 1) + "+e" + std::to_string(base[b] + 1),
                    add_fields(m_.frame_field(base[a]), m_.frame_field(base[b])));
                probes.emplace_back(
                    "e" + std::to_string(base[a] + 1) + "-e" + std::to_string(base[b] + 1),
                    sub_fields(m_.frame_field(base[a]), m_.frame_field(base[b])));
                probes.emplace_back(
                    "e" + std::to_string(base[a] + 1) + "+2e" + std::to_string(base[b] + 1),
                    add_fields(m_.frame_field(base[a]),
                               scale_field(Expr::from_int(2), m_.frame_field(base[b]))));
            }
        return probes;
    }

    void phi_identities() {
        auto probes = eta_probes();
        const Expr two_ab = Expr::from_int(2) * alpha_ * beta_;
        const Expr a2 = alpha_ * alpha_, b2 = beta_ * beta_;

        auto& i1 = entry("phi_curvature_identity_1", "eta-annihilated probe triples");
        auto& i2 = entry("phi_curvature_identity_2", "eta-annihilated probe triples");
        for (const auto& [nx, X] : probes)
            for (const auto& [ny, Y] : probes)
                for (const auto& [nz, Z] : probes) {
                    Field pX = cs_.apply_phi(X), pY = cs_.apply_phi(Y), pZ = cs_.apply_phi(Z);
                    const Expr gYZ = m_.pair(Y, Z), gXZ = m_.pair(X, Z);
                    const Expr gXpZ = m_.pair(X, pZ), gYpZ = m_.pair(Y, pZ);
                    const Expr gZpX = m_.pair(Z, pX), gZpY = m_.pair(Z, pY);
                    const std::string at = " at (" + nx + "," + ny + "," + nz + ")";
                    {
                        Field lhs = sub_fields(cd_.curvature_field(X, Y, pZ),
                                               cs_.apply_phi(cd_.curvature_field(X, Y, Z)));
                        Field rhs = scale_field(
                            a2, add_fields(sub_fields(scale_field(gYZ, pX), scale_field(gXZ, pY)),
                                           sub_fields(scale_field(gXpZ, Y), scale_field(gYpZ, X))));
                        rhs = add_fields(
                            rhs, scale_field(two_ab, add_fields(sub_fields(scale_field(gYZ, X),
                                                                           scale_field(gXZ, Y)),
                                                                sub_fields(scale_field(gYpZ, pX),
                                                                           scale_field(gXpZ, pY)))));
                        rhs = add_fields(
                            rhs, scale_field(b2, add_fields(sub_fields(scale_field(gYpZ, X),
                                                                       scale_field(gXpZ, Y)),
                                                            sub_fields(scale_field(gXZ, pY),
                                                                       scale_field(gYZ, pX)))));
                        record_field(i1, "commutator" + at, sub_fields(lhs, rhs));
                    }
                    {
                        Field lhs = sub_fields(cd_.curvature_field(pX, pY, Z),
                                               cd_.curvature_field(X, Y, Z));
                        Field rhs = scale_field(
                            a2, add_fields(sub_fields(scale_field(gYZ, X), scale_field(gXZ, Y)),
                                           sub_fields(scale_field(gZpX, pY), scale_field(gZpY, pX))));
                        rhs = add_fields(
                            rhs, scale_field(two_ab, add_fields(sub_fields(scale_field(gYZ, pX),
                                                                           scale_field(gXZ, pY)),
                                                                sub_fields(scale_field(gZpY, X),
                                                                           scale_field(gZpX, Y)))));
                        rhs = add_fields(
                            rhs, scale_field(b2, add_fields(sub_fields(scale_field(gXZ, Y),
                                                                       scale_field(gYZ, X)),
                                                            sub_fields(scale_field(gZpY, pX),
                                                                       scale_field(gZpX, pY)))));
                        record_field(i2, "phi-invariance" + at, sub_fields(lhs, rhs));
                    }
                }
        finish(i1);
        finish(i2);

        auto& i3 = entry("phi_curvature_identity_3", "eta-annihilated probe pairs");
        auto& i4 = entry("phi_curvature_identity_4", "eta-annihilated probe pairs");
        auto& i5 = entry("phi_curvature_identity_5", "eta-annihilated probe pairs");
        auto& i6 = entry("phi_curvature_identity_6", "eta-annihilated probe pairs");
        for (const auto& [nx, X] : probes)
            for (const auto& [ny, Y] : probes) {
                Field pX = cs_.apply_phi(X), pY = cs_.apply_phi(Y);
                const Expr gXY = m_.pair(X, Y), gXX = m_.pair(X, X), gYY = m_.pair(Y, Y);
                const Expr gXpY = m_.pair(X, pY);
                const Expr quad = gXY * gXY - gXX * gYY + gXpY * gXpY;
                const std::string at = " at (" + nx + "," + ny + ")";
                record(i3, "plane comparison" + at,
                       cd_.r4_field(X, Y, pX, pY) - cd_.r4_field(X, Y, X, Y) - aa_ * quad);
                record(i4, "plane exchange" + at,
                       cd_.r4_field(X, pX, Y, pY) - cd_.r4_field(X, pY, Y, pX) -
                           cd_.r4_field(X, Y, X, Y) - aa_ * quad);
                record(i5, "pairing" + at,
                       cd_.r4_field(X, pY, X, pY) - cd_.r4_field(X, pY, Y, pX) + aa_ * quad);
                record(i6, "reflection" + at,
                       cd_.r4_field(Y, pX, Y, pX) - cd_.r4_field(X, pY, Y, pX) + aa_ * quad);
            }
        finish(i3);
        finish(i4);
        finish(i5);
        finish(i6);
    }

    void model_identities() {
        auto& mod = entry("space_form_model", "all frame triples");
        if (!c_.is_constant() || !alpha_.is_constant() || !beta_.is_constant()) {
            mod.failures.push_back({"inputs", "alpha, beta or c is not constant"});
            finish(mod);
            return;
        }
        auto model = space_form_model(cs_, c_, alpha_, beta_);
        auto idx = [this](int i, int j, int k, int l) {
            return size_t(((i * d_ + j) * d_ + k) * d_ + l);
        };
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                for (int k = 0; k < d_; ++k) {
                    Field diff(static_cast<size_t>(d_));
                    for (int l = 0; l < d_; ++l)
                        diff[size_t(l)] = cd_.riem(i, j, k, l) - model[idx(i, j, k, l)];
                    record_field(mod, "at (e" + std::to_string(i + 1) + ",e" +
                                          std::to_string(j + 1) + ",e" + std::to_string(k + 1) + ")",
                                 diff);
                }
        finish(mod);

        auto& printed = entry("ricci_formula_printed", "all frame pairs");
        auto printed_ric = printed_ricci_formula(cs_, c_, alpha_, beta_);
        for (int j = 0; j < d_; ++j)
            for (int k = 0; k < d_; ++k)
                record(printed, "at " + pair_name(j, k),
                       cd_.ricci(j, k) - printed_ric[size_t(j)][size_t(k)]);
        finish(printed);

        auto& contracted = entry("ricci_formula_contracted", "all frame pairs");
        auto model_ric = contract_model_ricci(cs_, model, cd_.convention());
        for (int j = 0; j < d_; ++j)
            for (int k = 0; k < d_; ++k)
                record(contracted, "at " + pair_name(j, k),
                       cd_.ricci(j, k) - model_ric[size_t(j)][size_t(k)]);
        finish(contracted);
    }

    void symmetry_invariants() {
        auto& anti = entry("riemann_antisymmetry", "all frame tuples");
        auto& pairsym = entry("r4_pair_symmetry", "all frame tuples");
        auto& ricsym = entry("ricci_symmetry", "all frame pairs");
        auto& bianchi1 = entry("first_bianchi", "all frame triples");
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) {
                for (int k = 0; k < d_; ++k) {
                    for (int l = 0; l < d_; ++l) {
                        record(anti, "", cd_.riem(i, j, k, l) + cd_.riem(j, i, k, l));
                        record(pairsym, "", cd_.r4(i, j, k, l) - cd_.r4(k, l, i, j));
                    }
                    Field sum = add_fields(
                        cd_.curvature_field(m_.frame_field(i), m_.frame_field(j), m_.frame_field(k)),
                        add_fields(cd_.curvature_field(m_.frame_field(j), m_.frame_field(k),
                                                       m_.frame_field(i)),
                                   cd_.curvature_field(m_.frame_field(k), m_.frame_field(i),
                                                       m_.frame_field(j))));
                    record_field(bianchi1,
                                 "at (e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) +
                                     ",e" + std::to_string(k + 1) + ")",
                                 sum);
                }
                record(ricsym, "at " + pair_name(i, j), cd_.ricci(i, j) - cd_.ricci(j, i));
            }
        finish(anti);
        finish(pairsym);
        finish(ricsym);
        finish(bianchi1);
    }

    void bianchi_identities() {
        auto& bianchi2 = entry("second_bianchi", "all frame tuples");
        for (int a = 0; a < d_; ++a)
            for (int i = a; i < d_; ++i)
                for (int j = i; j < d_; ++j)
                    for (int k = 0; k < d_; ++k) {
                        Field sum = add_fields(
                            covariant_derivative_of_curvature(cd_, a, i, j, k),
                            add_fields(covariant_derivative_of_curvature(cd_, i, j, a, k),
                                       covariant_derivative_of_curvature(cd_, j, a, i, k)));
                        record_field(bianchi2,
                                     "at (e" + std::to_string(a + 1) + ",e" + std::to_string(i + 1) +
                                         ",e" + std::to_string(j + 1) + ";e" + std::to_string(k + 1) +
                                         ")",
                                     sum);
                    }
        finish(bianchi2);
    }

    void connection_invariants() {
        auto& torsion = entry("torsion_free", "all frame pairs");
        auto& compat = entry("metric_compatibility", "all frame triples");
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                for (int k = 0; k < d_; ++k) {
                    record(torsion, "at " + pair_name(i, j),
                           conn_.gamma(i, j, k) - conn_.gamma(j, i, k) -
                               m_.structure_constant(i, j, k));
                    Expr t = m_.dir_deriv(i, m_.metric()[size_t(j)][size_t(k)]);
                    for (int l = 0; l < d_; ++l)
                        t -= conn_.gamma(i, j, l) * m_.metric()[size_t(l)][size_t(k)] +
                             conn_.gamma(i, k, l) * m_.metric()[size_t(j)][size_t(l)];
                    record(compat, "at " + pair_name(j, k), t);
                }
        finish(torsion);
        finish(compat);
    }

    const CurvatureData& cd_;
    const ContactStructure& cs_;
    const FrameManifold& m_;
    const Connection& conn_;
    int d_;
    Expr alpha_, beta_, c_, aa_;
    IdentityReport report_;
};

} // namespace

IdentityReport identity_suite(const CurvatureData& cd, const ContactStructure& cs,
                              const Expr& alpha, const Expr& beta, const Expr& c) {
    return SuiteBuilder(cd, cs, alpha, beta, c).run();
}

Field covariant_derivative_of_curvature(const CurvatureData& cd, int a, int i, int j, int k) {
    const Connection& conn = cd.connection();
    const int d = cd.manifold().dim();
    Field riem_field(static_cast<size_t>(d));
    for (int l = 0; l < d; ++l) riem_field[size_t(l)] = cd.riem(i, j, k, l);
    Field t = conn.covariant_derivative(a, riem_field);
    for (int l = 0; l < d; ++l) {
        Expr corr;
        for (int b = 0; b < d; ++b) {
            corr += conn.gamma(a, i, b) * cd.riem(b, j, k, l);
            corr += conn.gamma(a, j, b) * cd.riem(i, b, k, l);
            corr += conn.gamma(a, k, b) * cd.riem(i, j, b, l);
        }
        t[size_t(l)] -= corr;
    }
    return t;
}

CurvatureInvariants check_curvature_invariants(const CurvatureData& cd) {
    const FrameManifold& m = cd.manifold();
    const Connection& conn = cd.connection();
    const int d = m.dim();
    CurvatureInvariants inv;
    inv.antisymmetry = inv.pair_symmetry = inv.ricci_symmetric = true;
    inv.first_bianchi = inv.second_bianchi = true;
    inv.torsion_free = inv.metric_compatible = true;

    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            inv.ricci_symmetric =
                inv.ricci_symmetric && (cd.ricci(i, j) - cd.ricci(j, i)).is_zero();
            for (int k = 0; k < d; ++k) {
                inv.torsion_free =
                    inv.torsion_free && (conn.gamma(i, j, k) - conn.gamma(j, i, k) -
                                         m.structure_constant(i, j, k))
                                            .is_zero();
                Expr compat = m.dir_deriv(i, m.metric()[size_t(j)][size_t(k)]);
                for (int l = 0; l < d; ++l)
                    compat -= conn.gamma(i, j, l) * m.metric()[size_t(l)][size_t(k)] +
                              conn.gamma(i, k, l) * m.metric()[size_t(j)][size_t(l)];
                inv.metric_compatible = inv.metric_compatible && compat.is_zero();
                for (int l = 0; l < d; ++l) {
                    inv.antisymmetry =
                        inv.antisymmetry && (cd.riem(i, j, k, l) + cd.riem(j, i, k, l)).is_zero();
                    inv.pair_symmetry =
                        inv.pair_symmetry && (cd.r4(i, j, k, l) - cd.r4(k, l, i, j)).is_zero();
                    Expr cyc = cd.riem(i, j, k, l) + cd.riem(j, k, i, l) + cd.riem(k, i, j, l);
                    inv.first_bianchi = inv.first_bianchi && cyc.is_zero();
                }
            }
        }
    for (int a = 0; a < d && inv.second_bianchi; ++a)
        for (int i = a; i < d; ++i)
            for (int j = i; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    Field sum =
                        add_fields(covariant_derivative_of_curvature(cd, a, i, j, k),
                                   add_fields(covariant_derivative_of_curvature(cd, i, j, a, k),
                                              covariant_derivative_of_curvature(cd, j, a, i, k)));
                    inv.second_bianchi = inv.second_bianchi && field_is_zero(sum);
                }
    return inv;
}

} // namespace tsgeo::geom
