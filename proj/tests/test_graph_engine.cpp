#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drg/graph.hpp"
#include "drg/graph_algebra.hpp"
#include "oracles.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace {

std::string edge_text(const oracle::SimpleGraph& g) {
    std::ostringstream os;
    for (int v = 0; v < g.n; ++v)
        for (int w : g.adj[v])
            if (v < w) os << v << " " << w << "\n";
    return os.str();
}

} // namespace

TEST_CASE("family construction basics") {
    auto c = drg::hypercube(3);
    CHECK(c.n == 8);
    CHECK(c.diameter == 3);

    auto h = drg::hamming(3, 3);
    CHECK(h.n == 27);
    CHECK(h.diameter == 3);

    auto j = drg::johnson(8, 3);
    CHECK(j.n == 56);
    CHECK(j.diameter == 3);

    // k normalizes to min(k, n - k)
    auto j2 = drg::johnson(8, 5);
    CHECK(j2.n == 56);
    CHECK(j2.diameter == 3);

    auto r = drg::cycle(7);
    CHECK(r.n == 7);
    CHECK(r.diameter == 3);

    CHECK_THROWS_AS(drg::hypercube(2), std::invalid_argument);
    CHECK_THROWS_AS(drg::cycle(4), std::invalid_argument);
    CHECK_THROWS_AS(drg::hamming(3, 1), std::invalid_argument);

    CHECK(drg::build_family("hypercube", {4}).n == 16);
    CHECK_THROWS_AS(drg::build_family("petersen", {}), std::invalid_argument);
}

TEST_CASE("distances agree with the reference BFS") {
    auto g = drg::johnson(8, 3);
    auto ref = oracle::johnson_sets(8, 3);
    REQUIRE(g.n == ref.n);
    for (int y = 0; y < g.n; ++y)
        for (int z = 0; z < g.n; ++z) CHECK(g.dist[y][z] == ref.dist[y][z]);
}

TEST_CASE("distance-regularity check recovers intersection arrays") {
    auto res = drg::check_drg(drg::hypercube(3));
    REQUIRE(res.is_drg);
    CHECK(drg::format_array(res.array) == "3,2,1;1,2,3");

    auto resH = drg::check_drg(drg::hamming(3, 3));
    REQUIRE(resH.is_drg);
    CHECK(drg::format_array(resH.array) == "6,4,2;1,2,3");

    auto resJ = drg::check_drg(drg::johnson(8, 3));
    REQUIRE(resJ.is_drg);
    CHECK(drg::format_array(resJ.array) == "15,8,3;1,4,9");

    auto resR = drg::check_drg(drg::cycle(7));
    REQUIRE(resR.is_drg);
    CHECK(drg::format_array(resR.array) == "2,1,1;1,1,1");
}

TEST_CASE("edge lists parse and the check refuses bad graphs") {
    // cube plus a chord is not distance-regular
    auto cube = oracle::bit_cube(3);
    std::string text = edge_text(cube) + "0 7\n";
    auto g = drg::from_edge_list(text);
    CHECK(g.n == 8);
    auto res = drg::check_drg(g);
    CHECK_FALSE(res.is_drg);
    CHECK(!res.message.empty());

    // irregular graph: path on 5 vertices
    auto path = drg::from_edge_list("0 1\n1 2\n2 3\n3 4\n");
    auto resP = drg::check_drg(path);
    CHECK_FALSE(resP.is_drg);

    // disconnected
    auto disc = drg::from_edge_list("0 1\n2 3\n");
    auto resD = drg::check_drg(disc);
    CHECK_FALSE(resD.is_drg);
    CHECK(resD.message.find("connect") != std::string::npos);

    // diameter below 3
    auto k4 = drg::from_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    auto resK = drg::check_drg(k4);
    CHECK_FALSE(resK.is_drg);

    // comments and whitespace
    auto gc = drg::from_edge_list("# a triangle plus tail\n0 1\n1 2\n2 0\n\n2 3\n");
    CHECK(gc.n == 4);

    CHECK_THROWS_AS(drg::from_edge_list("0 x\n"), std::invalid_argument);
    CHECK_THROWS_AS(drg::from_edge_list("0 -2\n"), std::invalid_argument);
}

TEST_CASE("witness pinpoints a pair-count conflict") {
    // pentagonal prism: 3-regular, diameter 3, not distance-regular.  The
    // ring edge (0,1) sees one vertex in both second shells, the rung edge
    // (0,5) sees none, so the scan first trips at (0,5) on the (2,2) count.
    auto g = drg::from_edge_list(
        "0 1\n1 2\n2 3\n3 4\n0 4\n5 6\n6 7\n7 8\n8 9\n5 9\n"
        "0 5\n1 6\n2 7\n3 8\n4 9\n");
    auto res = drg::check_drg(g);
    REQUIRE_FALSE(res.is_drg);
    CHECK(res.witness.y == 0);
    CHECK(res.witness.z == 5);
    CHECK(res.witness.h == 1);
    CHECK(res.witness.i == 2);
    CHECK(res.witness.j == 2);
    CHECK(res.witness.count == 0);
    CHECK(res.witness.expected == 1);
}

TEST_CASE("bose-mesner basis of the cube") {
    auto g = drg::hypercube(3);
    auto chk = drg::check_drg(g);
    REQUIRE(chk.is_drg);
    auto alg = drg::bose_mesner(g, chk.array);
    CHECK(alg.build_residual < 1e-8);

    auto ref = oracle::bit_cube(3);
    for (int i = 0; i <= 3; ++i) {
        auto want = oracle::distance_matrix(ref, i);
        for (int y = 0; y < 8; ++y)
            for (int z = 0; z < 8; ++z) CHECK(alg.A[i](y, z) == want[y][z]);
    }

    // idempotents against dense Lagrange projectors
    auto a = oracle::adjacency_matrix(ref);
    auto thetas = oracle::distinct_values(oracle::jacobi_eigenvalues(a));
    for (int j = 0; j <= 3; ++j) {
        auto want = oracle::lagrange_projector(a, thetas, j);
        for (int y = 0; y < 8; ++y)
            for (int z = 0; z < 8; ++z) CHECK(std::fabs(alg.E[j](y, z) - want[y][z]) < 1e-8);
    }
}

TEST_CASE("subconstituent data at a base vertex") {
    auto g = drg::hypercube(3);
    auto chk = drg::check_drg(g);
    auto alg = drg::bose_mesner(g, chk.array);
    auto sub = drg::subconstituent(alg, 0);

    // E*_i selects the distance-i shell
    for (int i = 0; i <= 3; ++i) {
        double tr = 0;
        for (int y = 0; y < 8; ++y) tr += sub.Estar[i](y, y);
        CHECK(tr == chk.array.shell[i].get_d());
    }

    // dual adjacency diagonal carries the dual eigenvalues by shell
    std::vector<double> want{3, 1, -1, -3};
    for (int y = 0; y < 8; ++y) {
        int shell = g.dist[0][y];
        CHECK(std::fabs(sub.Astar[1](y, y) - want[shell]) < 1e-9);
    }

    // the two routes to e0 agree
    CHECK(sub.e0_route_gap < 1e-10);
}

TEST_CASE("identity suite on the cube") {
    auto g = drg::hypercube(3);
    auto chk = drg::check_drg(g);
    auto alg = drg::bose_mesner(g, chk.array);
    auto sub = drg::subconstituent(alg, 0);
    auto kr = drg::krein_parameters(alg.sp);
    auto rep = drg::verify_identities(alg, sub, kr);
    CHECK(rep.all_pass);
    CHECK(rep.worst < 1e-8);
    CHECK(rep.checks.size() > 25);
}

TEST_CASE("hadamard span matches the Krein support") {
    auto g = drg::hypercube(3);
    auto chk = drg::check_drg(g);
    auto alg = drg::bose_mesner(g, chk.array);
    auto kr = drg::krein_parameters(alg.sp);

    auto got = drg::hadamard_span_check(alg, 1, 1);
    CHECK(got == std::vector<int>{0, 2});

    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            auto span = drg::hadamard_span_check(alg, i, j);
            std::vector<int> want;
            for (int h = 0; h <= 3; ++h)
                if (!kr.is_zero(h, i, j)) want.push_back(h);
            CHECK(span == want);
        }
}

TEST_CASE("filtration detector on the cube") {
    auto g = drg::hypercube(3);
    auto chk = drg::check_drg(g);
    auto alg = drg::bose_mesner(g, chk.array);

    auto good = drg::filtration_qpoly_check(alg, {0, 1, 2, 3});
    CHECK(good.qpoly);
    CHECK(good.nondegenerate);

    auto bad = drg::filtration_qpoly_check(alg, {0, 2, 1, 3});
    CHECK_FALSE(bad.qpoly);
}

TEST_CASE("norton product basics") {
    auto g = drg::hypercube(3);
    auto chk = drg::check_drg(g);
    auto alg = drg::bose_mesner(g, chk.array);

    // yhat o yhat = yhat, so the product of a vertex with itself is E_j yhat
    std::vector<double> y(8, 0.0);
    y[2] = 1.0;
    auto p = drg::norton_product(alg, 1, y, y);
    for (int z = 0; z < 8; ++z) CHECK(std::fabs(p[z] - alg.E[1](z, 2)) < 1e-12);

    // commutativity
    std::vector<double> u{1, -2, 0.5, 0, 3, 1, -1, 2};
    std::vector<double> v{0, 1, 2, -1, 0.25, -3, 1, 1};
    auto uv = drg::norton_product(alg, 1, u, v);
    auto vu = drg::norton_product(alg, 1, v, u);
    for (int z = 0; z < 8; ++z) CHECK(std::fabs(uv[z] - vu[z]) < 1e-12);
}

TEST_CASE("balanced set condition on the cube") {
    auto g = drg::hypercube(3);
    auto chk = drg::check_drg(g);
    auto alg = drg::bose_mesner(g, chk.array);

    auto res = drg::balanced_set_check(alg, 1);
    CHECK(res.applicable);
    CHECK(res.balanced);
    CHECK(res.max_residual < 1e-8);
    CHECK(res.span_residual < 1e-8);

    // E_3 of the cube is degenerate: u_2(theta_3) = 1
    auto deg = drg::balanced_set_check(alg, 3);
    CHECK_FALSE(deg.applicable);
}
