#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "tsgeo/contact_structure.hpp"
#include "tsgeo/fixture.hpp"

#include <Eigen/Dense>

#include <random>

using namespace tsgeo;
using namespace tsgeo::geom;
using test::diag3;
using test::E;
using test::xyz;

struct Workbench {
    explicit Workbench(const ExampleData& ex)
        : m(ex.manifold), conn(Connection::levi_civita(m)),
          cs(ContactStructure::attach(m, conn, ex.phi, ex.xi)) {}
    FrameManifold m;
    Connection conn;
    ContactStructure cs;
};

TEST_CASE("example structure satisfies every axiom") {
    Workbench w{make_example()};
    CHECK(w.cs.valid());
    CHECK(w.cs.eta()[0].is_zero());
    CHECK(w.cs.eta()[1].is_zero());
    CHECK(w.cs.eta()[2] == E("1")); // eta(e3) = -g(e3,e3) = 1
}

TEST_CASE("Riemannian signature breaks the g(xi,xi) = -1 axiom") {
    Workbench w{make_example_riemannian()};
    CHECK_FALSE(w.cs.valid());
    bool found = false;
    for (const auto& v : w.cs.violations())
        if (v.equation == "g(xi, xi) = -1") found = true;
    CHECK(found);
}

TEST_CASE("perturbed phi is reported with the offending index pair") {
    auto ex = make_example();
    ex.phi[0][1] = E("-2");
    Workbench w{ex};
    CHECK_FALSE(w.cs.valid());
    bool found = false;
    for (const auto& v : w.cs.violations())
        if (v.equation == "phi^2 = -I + eta (x) xi" && v.i == 0 && v.j == 0) found = true;
    CHECK(found);
}

TEST_CASE("trans-Sasakian extraction on the example gives (0, -1)") {
    Workbench w{make_example()};
    auto rep = extract_trans_sasakian(w.cs);
    CHECK(rep.alpha.is_zero());
    CHECK(rep.beta == E("-1"));
    CHECK(rep.alpha_constant);
    CHECK(rep.beta_constant);
    CHECK(rep.pass);
    CHECK(rep.failures.empty());
}

TEST_CASE("covariantly parallel xi gives (0, 0)") {
    Workbench w{make_flat_example()};
    // flat connection: nabla xi = 0 identically while phi != 0
    auto rep = extract_trans_sasakian(w.cs);
    CHECK(rep.alpha.is_zero());
    CHECK(rep.beta.is_zero());
    CHECK(rep.pass);
}

TEST_CASE("xi-derivative identity at X = e1 with the extracted constants") {
    Workbench w{make_example()};
    auto rep = extract_trans_sasakian(w.cs);
    // nabla_{e1} xi must equal alpha phi e1 + beta (e1 - eta(e1) xi) = -e1
    Field lhs = w.conn.covariant_derivative(0, w.cs.xi());
    Field e1 = w.m.frame_field(0);
    Field rhs = add_fields(scale_field(rep.alpha, w.cs.apply_phi(e1)),
                           scale_field(rep.beta, e1));
    for (int k = 0; k < 3; ++k) CHECK(lhs[size_t(k)] == rhs[size_t(k)]);
    CHECK(lhs[0] == E("-1"));
}

TEST_CASE("extraction is probe independent") {
    Workbench w{make_example()};
    auto rep = extract_trans_sasakian(w.cs);
    for (int i = 0; i < 3; ++i) {
        Field ei = w.m.frame_field(i);
        Field phi_ei = w.cs.apply_phi(ei);
        if (!w.cs.eta()[size_t(i)].is_zero() || w.m.pair(ei, ei).is_zero() ||
            field_is_zero(phi_ei))
            continue;
        Field nab_xi = w.conn.covariant_derivative(i, w.cs.xi());
        Expr alpha_i = w.m.pair(nab_xi, phi_ei) / w.m.pair(phi_ei, phi_ei);
        Expr beta_i = w.m.pair(nab_xi, ei) / w.m.pair(ei, ei);
        CHECK((alpha_i - rep.alpha).is_zero());
        CHECK((beta_i - rep.beta).is_zero());
    }
}

TEST_CASE("normality tensors vanish on the example under both conventions") {
    Workbench w{make_example()};
    for (auto conv : {DConvention::half, DConvention::full}) {
        auto rep = normality_tensors(w.cs, conv);
        CHECK(rep.all_vanish);
    }
}

TEST_CASE("N3 applied to xi vanishes on the example") {
    Workbench w{make_example()};
    auto rep = normality_tensors(w.cs, DConvention::half);
    // xi = e3, so N3(xi) is the i = 2 entry
    CHECK(field_is_zero(rep.n3[2]));
}

TEST_CASE("zero phi reduces N1 to the d_eta term") {
    auto ex = make_example();
    for (auto& row : ex.phi)
        for (auto& entry : row) entry = Expr();
    Workbench w{ex};
    CHECK_FALSE(w.cs.valid()); // phi^2 = -I + eta (x) xi fails for phi = 0
    for (auto conv : {DConvention::half, DConvention::full}) {
        auto rep = normality_tensors(w.cs, conv);
        const Expr f = conv == DConvention::half ? E("1/2") : E("1");
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Field br = w.m.bracket(w.m.frame_field(i), w.m.frame_field(j));
                Expr deta = f * (w.m.dir_deriv(i, w.cs.eta()[size_t(j)]) -
                                 w.m.dir_deriv(j, w.cs.eta()[size_t(i)]) - w.cs.eta_of(br));
                Field want = scale_field(E("2") * deta, w.cs.xi());
                for (int k = 0; k < 3; ++k)
                    CHECK(rep.n1[size_t(i)][size_t(j)][size_t(k)] == want[size_t(k)]);
            }
    }
}

TEST_CASE("Oubina conditions on the example, per convention") {
    Workbench w{make_example()};
    auto rep = extract_trans_sasakian(w.cs);

    auto full = oubina_check(w.cs, rep.alpha, rep.beta, DConvention::full);
    CHECK(full.d_eta_matches);
    CHECK(full.d_phi_matches);

    auto half = oubina_check(w.cs, rep.alpha, rep.beta, DConvention::half);
    CHECK(half.d_eta_matches); // alpha = 0 and d_eta = 0: convention-insensitive
    CHECK_FALSE(half.d_phi_matches);
}

TEST_CASE("Oubina conditions hold trivially on the flat abelian example") {
    Workbench w{make_flat_example()};
    auto rep = extract_trans_sasakian(w.cs);
    for (auto conv : {DConvention::half, DConvention::full}) {
        auto oub = oubina_check(w.cs, rep.alpha, rep.beta, conv);
        CHECK(oub.d_eta_matches);
        CHECK(oub.d_phi_matches);
    }
}

TEST_CASE("phi is traceless with numeric rank d-1") {
    Workbench w{make_example()};
    Expr trace;
    for (int i = 0; i < 3; ++i) trace += w.cs.phi()[size_t(i)][size_t(i)];
    CHECK(trace.is_zero());

    std::mt19937 rng(47);
    std::uniform_real_distribution<double> u(0.2, 1.7);
    std::vector<double> pt = {u(rng), u(rng), u(rng)};
    Eigen::MatrixXd p(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p(i, j) = w.cs.phi()[size_t(i)][size_t(j)].evaluate(pt);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(p);
    lu.setThreshold(1e-9);
    CHECK(lu.rank() == 2);
}

TEST_CASE("if the derivative identities pass then the normality tensors vanish") {
    // corpus: the example, its flat variant, and homogeneous relatives
    std::vector<ExampleData> corpus;
    corpus.push_back(make_example());
    corpus.push_back(make_flat_example());
    {
        auto ex = make_example();
        corpus.push_back(
            {test::homogeneous_manifold("2", "2", "1", "1", "-1"), ex.phi, ex.xi});
    }
    for (const auto& ex : corpus) {
        Workbench w{ex};
        auto rep = extract_trans_sasakian(w.cs);
        if (!rep.pass) continue;
        auto norm = normality_tensors(w.cs, DConvention::half);
        CHECK(norm.all_vanish);
    }
}

TEST_CASE("attach rejects mismatched dimensions") {
    auto ex = make_example();
    Workbench w{make_example()};
    Field bad_xi(2);
    CHECK_THROWS_AS(ContactStructure::attach(w.m, w.conn, ex.phi, bad_xi), BuildError);
}
