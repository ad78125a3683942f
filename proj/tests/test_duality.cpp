#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drg/duality.hpp"
#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace {

const char* kCube = "3,2,1;1,2,3";
const char* kHamming33 = "6,4,2;1,2,3";
const char* kJohnson83 = "15,8,3;1,4,9";
const char* kRing7 = "2,1,1;1,1,1";

drg::SpectralData spectral_of(const char* text) {
    return drg::spectral_data(drg::parse_array(text));
}

} // namespace

TEST_CASE("cube Krein parameters equal its intersection numbers") {
    auto ia = drg::parse_array(kCube);
    auto sp = drg::spectral_data(ia);
    auto kr = drg::krein_parameters(sp);
    auto p = drg::intersection_numbers(ia);
    for (int h = 0; h <= 3; ++h)
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 3; ++j)
                CHECK(std::fabs(kr(h, i, j) - p(h, i, j).get_d()) < 1e-8);
    CHECK(kr.krein_ok);
}

TEST_CASE("cube Krein parameters against dense projector arithmetic") {
    auto g = oracle::bit_cube(3);
    auto a = oracle::adjacency_matrix(g);
    auto thetas = oracle::distinct_values(oracle::jacobi_eigenvalues(a));
    std::vector<oracle::Mat> e;
    for (int j = 0; j < 4; ++j)
        e.push_back(oracle::lagrange_projector(a, thetas, j));

    auto sp = spectral_of(kCube);
    auto kr = drg::krein_parameters(sp);
    int n = g.n;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j)
            for (int h = 0; h <= 3; ++h) {
                // q^h_{ij} = n * tr((E_i o E_j) E_h) / m_h
                double t = 0;
                for (int y = 0; y < n; ++y)
                    for (int z = 0; z < n; ++z)
                        t += e[i][y][z] * e[j][y][z] * e[h][z][y];
                double m_h = oracle::mat_trace(e[h]);
                CHECK(std::fabs(n * t / m_h - kr(h, i, j)) < 1e-8);
            }
}

TEST_CASE("Krein table identities") {
    for (const char* text : {kCube, kHamming33, kJohnson83, kRing7}) {
        auto sp = spectral_of(text);
        auto kr = drg::krein_parameters(sp);
        int d = sp.d;
        for (int h = 0; h <= d; ++h)
            for (int i = 0; i <= d; ++i) {
                CHECK(std::fabs(kr(h, 0, i) - (h == i ? 1.0 : 0.0)) < 1e-8);
                CHECK(std::fabs(kr(0, h, i) - (h == i ? sp.mult[i] : 0.0)) < 1e-7);
                double s = 0;
                for (int i2 = 0; i2 <= d; ++i2) s += kr(h, i2, i);
                CHECK(std::fabs(s - sp.mult[i]) < 1e-7);
                for (int j = 0; j <= d; ++j) {
                    CHECK(std::fabs(kr(h, i, j) - kr(h, j, i)) < 1e-9);
                    CHECK(std::fabs(sp.mult[h] * kr(h, i, j) - sp.mult[i] * kr(i, j, h)) <
                          1e-6);
                }
            }
        CHECK(kr.krein_ok);
    }
}

TEST_CASE("direct detection finds the unique cube ordering") {
    auto sp = spectral_of(kCube);
    auto qps = drg::qpoly_orderings_direct(sp);
    REQUIRE(qps.size() == 1);
    CHECK(qps[0].order == std::vector<int>{0, 1, 2, 3});

    std::vector<double> want{3, 1, -1, -3};
    for (int i = 0; i <= 3; ++i) CHECK(std::fabs(qps[0].theta_star[i] - want[i]) < 1e-9);

    // self-dual: the dual array mirrors the primal one
    CHECK(std::fabs(qps[0].cs[1] - 1) < 1e-9);
    CHECK(std::fabs(qps[0].cs[2] - 2) < 1e-9);
    CHECK(std::fabs(qps[0].cs[3] - 3) < 1e-9);
    CHECK(std::fabs(qps[0].bs[0] - 3) < 1e-9);
    CHECK(std::fabs(qps[0].bs[1] - 2) < 1e-9);
    CHECK(std::fabs(qps[0].bs[2] - 1) < 1e-9);
    for (int i = 0; i <= 3; ++i) CHECK(std::fabs(qps[0].as[i]) < 1e-9);

    CHECK(qps[0].duality_residual < 1e-8);
    CHECK(qps[0].dual_orth_residual < 1e-8);
}

TEST_CASE("hamming(3,3) has exactly the natural ordering") {
    auto qps = drg::qpoly_orderings_direct(spectral_of(kHamming33));
    REQUIRE(qps.size() == 1);
    CHECK(qps[0].order == std::vector<int>{0, 1, 2, 3});
    std::vector<double> want{6, 3, 0, -3};
    for (int i = 0; i <= 3; ++i) CHECK(std::fabs(qps[0].theta_star[i] - want[i]) < 1e-8);
}

TEST_CASE("the 7-ring carries three orderings") {
    auto qps = drg::qpoly_orderings_direct(spectral_of(kRing7));
    REQUIRE(qps.size() == 3);
    CHECK(qps[0].order == std::vector<int>{0, 1, 2, 3});
    CHECK(qps[1].order == std::vector<int>{0, 2, 3, 1});
    CHECK(qps[2].order == std::vector<int>{0, 3, 1, 2});
    for (const auto& qp : qps) {
        CHECK(qp.duality_residual < 1e-8);
        CHECK(qp.dual_orth_residual < 1e-8);
        CHECK(qp.dual_mult_residual < 1e-7);
    }
}

TEST_CASE("johnson J(8,3) dual eigenvalues") {
    auto qps = drg::qpoly_orderings_direct(spectral_of(kJohnson83));
    REQUIRE(!qps.empty());
    const auto& qp = qps.front();
    CHECK(qp.order == std::vector<int>{0, 1, 2, 3});
    std::vector<double> want{7, 49.0 / 15, -7.0 / 15, -21.0 / 5};
    for (int i = 0; i <= 3; ++i) CHECK(std::fabs(qp.theta_star[i] - want[i]) < 1e-8);
    CHECK(qp.duality_residual < 1e-8);
    CHECK(qp.dual_orth_residual < 1e-8);
    CHECK(qp.dual_mult_residual < 1e-7);
}

TEST_CASE("three-condition dual test accepts exactly the cube candidates it should") {
    auto ia = drg::parse_array(kCube);
    auto sp = drg::spectral_data(ia);
    // candidate j: theta*_i = m_j u_i(theta_j)
    for (int j = 1; j <= 3; ++j) {
        std::vector<double> ts(4);
        for (int i = 0; i <= 3; ++i) ts[i] = sp.mult[j] * sp.u(i, j);
        auto res = drg::pascasio_check(ia, ts);
        if (j == 1) {
            CHECK(res.accepted);
            CHECK(std::fabs(res.beta - 2) < 1e-9);
            CHECK(std::fabs(res.gamma_star) < 1e-9);
            CHECK(std::fabs(res.gamma) < 1e-9);
            CHECK(std::fabs(res.omega) < 1e-9);
            CHECK(std::fabs(res.eta_star) < 1e-9);
        } else {
            CHECK_FALSE(res.accepted);
            CHECK(res.reject_reason.find("degenerate") != std::string::npos);
        }
    }
}

TEST_CASE("rebuilding the eigenvalue order from dual data") {
    auto sp = spectral_of(kCube);
    auto rec = drg::reconstruct_eigenvalue_order(sp, 3.0, 1.0, 2.0, 0.0);
    CHECK(rec.ok);
    CHECK(rec.order == std::vector<int>{0, 1, 2, 3});
    std::vector<double> want{3, 1, -1, -3};
    for (int i = 0; i <= 3; ++i) CHECK(std::fabs(rec.theta[i] - want[i]) < 1e-9);

    auto bad = drg::reconstruct_eigenvalue_order(sp, 3.0, 1.0, 2.0, 1.0);
    CHECK_FALSE(bad.ok);
}

TEST_CASE("recurrence classification") {
    auto rc = drg::recurrence_classify({3, 1, -1, -3});
    CHECK(rc.recurrent);
    CHECK(rc.beta_gamma_rho);
    CHECK(std::fabs(rc.beta - 2) < 1e-12);
    CHECK(std::fabs(rc.gamma) < 1e-12);
    CHECK(std::fabs(rc.rho - 4) < 1e-12);
    CHECK(rc.quad_identity_residual < 1e-12);

    auto geo = drg::recurrence_classify({1, 2, 4, 8});
    CHECK(geo.recurrent);
    CHECK(std::fabs(geo.beta - 2.5) < 1e-12);
    CHECK(std::fabs(geo.gamma) < 1e-12);
    CHECK(std::fabs(geo.rho) < 1e-12);
    CHECK(geo.quad_identity_residual < 1e-12);

    auto ar = drg::recurrence_classify({3, 2, 1, 0});
    CHECK(ar.beta_gamma_rho);
    CHECK(std::fabs(ar.beta - 2) < 1e-12);
    CHECK(std::fabs(ar.rho - 1) < 1e-12);

    // constant middle pair: not recurrent
    auto flat = drg::recurrence_classify({1, 1, 1, 1});
    CHECK_FALSE(flat.recurrent);

    // D = 3 leaves a single middle quotient, so any strictly varying sequence
    // passes every stage; the quotients only start to disagree at D = 4
    auto odd = drg::recurrence_classify({3, 1, -1, 5});
    CHECK(odd.recurrent);
    CHECK(odd.beta_gamma_rho);
    CHECK(std::fabs(odd.beta + 2) < 1e-12);

    auto skew = drg::recurrence_classify({8, 4, 2, 1, 0});
    CHECK_FALSE(skew.recurrent);
    CHECK_FALSE(skew.beta_gamma);
}

TEST_CASE("tridiagonal scalars of cube and johnson") {
    {
        std::vector<double> th{3, 1, -1, -3};
        auto td = drg::td_parameters(th, th);
        CHECK(std::fabs(td.beta - 2) < 1e-9);
        CHECK(std::fabs(td.gamma) < 1e-9);
        CHECK(std::fabs(td.gamma_star) < 1e-9);
        CHECK(std::fabs(td.rho - 4) < 1e-9);
        CHECK(std::fabs(td.rho_star - 4) < 1e-9);
        CHECK(td.beta_gap < 1e-12);
    }
    {
        std::vector<double> th{15, 7, 1, -3};
        std::vector<double> ts{7, 49.0 / 15, -7.0 / 15, -21.0 / 5};
        auto td = drg::td_parameters(th, ts);
        CHECK(std::fabs(td.beta - 2) < 1e-9);
        CHECK(std::fabs(td.gamma - 2) < 1e-9);
        CHECK(std::fabs(td.gamma_star) < 1e-9);
        CHECK(std::fabs(td.rho - 20) < 1e-9);
        CHECK(std::fabs(td.rho_star - 3136.0 / 225) < 1e-9);
    }

    // incompatible sequences: beta from the two sides disagrees
    CHECK_THROWS_AS(drg::td_parameters({3, 1, -1, -3}, {1, 2, 4, 8}),
                    std::domain_error);
}

TEST_CASE("askey-wilson scalars vanish on the cube") {
    auto sp = spectral_of(kCube);
    auto qps = drg::qpoly_orderings_direct(sp);
    REQUIRE(qps.size() == 1);
    const auto& qp = qps[0];
    auto ia = drg::parse_array(kCube);
    auto td = drg::td_parameters(qp.theta, qp.theta_star);

    std::vector<double> a(4), as(4);
    for (int i = 0; i <= 3; ++i) {
        a[i] = ia.a[i].get_d();
        as[i] = qp.as[i];
    }
    auto aw = drg::aw_parameters(a, as, qp.theta, qp.theta_star, td);
    CHECK(std::fabs(aw.omega) < 1e-9);
    CHECK(std::fabs(aw.eta) < 1e-9);
    CHECK(std::fabs(aw.eta_star) < 1e-9);
    CHECK(aw.max_residual < 1e-8);
}

TEST_CASE("askey-wilson scalars are cross-consistent on johnson") {
    auto ia = drg::parse_array(kJohnson83);
    auto sp = drg::spectral_data(ia);
    auto qps = drg::qpoly_orderings_direct(sp);
    REQUIRE(!qps.empty());
    const auto& qp = qps.front();
    auto td = drg::td_parameters(qp.theta, qp.theta_star);
    std::vector<double> a(4), as(4);
    for (int i = 0; i <= 3; ++i) {
        a[i] = ia.a[i].get_d();
        as[i] = qp.as[i];
    }
    auto aw = drg::aw_parameters(a, as, qp.theta, qp.theta_star, td);
    CHECK(aw.max_residual < 1e-8);
}

TEST_CASE("classical parameters of the named families") {
    {
        auto found = drg::classical_parameters(drg::parse_array(kHamming33));
        REQUIRE(found.size() == 1);
        CHECK(found[0].d == 3);
        CHECK(found[0].b == 1);
        CHECK(found[0].alpha == 0);
        CHECK(found[0].sigma == 2);
    }
    {
        auto found = drg::classical_parameters(drg::parse_array(kJohnson83));
        REQUIRE(found.size() == 1);
        CHECK(found[0].b == 1);
        CHECK(found[0].alpha == 1);
        CHECK(found[0].sigma == 5);
    }
    {
        auto found = drg::classical_parameters(drg::parse_array(kRing7));
        CHECK(found.empty());
    }
}

TEST_CASE("classical parameters induce the right dual structure") {
    auto ia = drg::parse_array(kJohnson83);
    auto sp = drg::spectral_data(ia);
    auto cp = drg::classical_parameters(ia).front();
    auto cq = drg::classical_qpoly(ia, sp, cp);
    CHECK(std::fabs(cq.theta - 7) < 1e-9);
    CHECK(cq.theta_index == 1);
    CHECK(cq.pascasio.accepted);
    CHECK(cq.order == std::vector<int>{0, 1, 2, 3});
    CHECK(cq.order_residual < 1e-8);

    auto iah = drg::parse_array(kHamming33);
    auto sph = drg::spectral_data(iah);
    auto cph = drg::classical_parameters(iah).front();
    auto cqh = drg::classical_qpoly(iah, sph, cph);
    CHECK(std::fabs(cqh.theta - 3) < 1e-9);
    CHECK(cqh.theta_index == 1);
    CHECK(cqh.pascasio.accepted);
    CHECK(cqh.order_residual < 1e-8);
}

TEST_CASE("a classical candidate whose eigenvalue equals the valency is refused") {
    auto ia = drg::parse_array(kHamming33);
    auto sp = drg::spectral_data(ia);
    drg::ClassicalParams cp;
    cp.d = 3;
    cp.b = 1;
    cp.alpha = drg::Rational(1, 2);
    cp.sigma = 4;   // makes b_1/b - 1 = 6 = k
    CHECK_THROWS_AS(drg::classical_qpoly(ia, sp, cp), std::domain_error);
}
