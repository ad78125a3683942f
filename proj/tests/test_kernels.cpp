#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drg/exec.hpp"
#include "drg/graph.hpp"
#include "drg/linalg.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

namespace {

drg::Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    drg::Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
    return m;
}

drg::Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
    auto m = random_matrix(n, n, seed);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) m(j, i) = m(i, j);
    return m;
}

struct ModeGuard {
    drg::exec::Mode saved;
    explicit ModeGuard(drg::exec::Mode m) : saved(drg::exec::mode()) {
        drg::exec::set_mode(m);
    }
    ~ModeGuard() { drg::exec::set_mode(saved); }
};

} // namespace

TEST_CASE("serial and parallel matmul agree bit for bit") {
    auto a = random_matrix(37, 41, 1);
    auto b = random_matrix(41, 29, 2);
    auto s = drg::matmul_serial(a, b);
    auto p = drg::matmul_parallel(a, b);
    REQUIRE(s.rows() == p.rows());
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) CHECK(s(i, j) == p(i, j));
}

TEST_CASE("matmul against the reference implementation") {
    auto a = random_matrix(12, 15, 3);
    auto b = random_matrix(15, 9, 4);
    oracle::Mat ao(12, std::vector<double>(15)), bo(15, std::vector<double>(9));
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 15; ++j) ao[i][j] = a(i, j);
    for (int i = 0; i < 15; ++i)
        for (int j = 0; j < 9; ++j) bo[i][j] = b(i, j);
    auto want = oracle::mat_mul(ao, bo);
    auto got = drg::matmul(a, b);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 9; ++j) CHECK(std::fabs(got(i, j) - want[i][j]) < 1e-12);
}

TEST_CASE("distance-regularity scan agrees across modes") {
    auto g = drg::hamming(3, 3);
    drg::DrgCheckResult rs, rp;
    {
        ModeGuard mg(drg::exec::Mode::serial);
        rs = drg::check_drg(g);
    }
    {
        ModeGuard mg(drg::exec::Mode::parallel);
        rp = drg::check_drg(g);
    }
    REQUIRE(rs.is_drg);
    REQUIRE(rp.is_drg);
    CHECK(drg::format_array(rs.array) == drg::format_array(rp.array));

    // and on a non-regular graph both report the same witness
    auto bad = drg::from_edge_list(
        "0 1\n1 2\n2 3\n3 4\n0 4\n5 6\n6 7\n7 8\n8 9\n5 9\n"
        "0 5\n1 6\n2 7\n3 8\n4 9\n");
    drg::DrgCheckResult ws, wp;
    {
        ModeGuard mg(drg::exec::Mode::serial);
        ws = drg::check_drg(bad);
    }
    {
        ModeGuard mg(drg::exec::Mode::parallel);
        wp = drg::check_drg(bad);
    }
    CHECK(ws.witness.y == wp.witness.y);
    CHECK(ws.witness.z == wp.witness.z);
    CHECK(ws.witness.h == wp.witness.h);
    CHECK(ws.witness.count == wp.witness.count);
}

TEST_CASE("tridiagonal eigensolver") {
    // known spectrum: T with diag 0, off-diag 1 on n=4 has eigenvalues
    // 2 cos(k pi / 5)
    std::vector<double> d(4, 0.0), e(3, 1.0);
    auto ev = drg::tridiag_eigen(d, e);
    const double pi = 3.14159265358979323846;
    std::vector<double> want{2 * std::cos(4 * pi / 5), 2 * std::cos(3 * pi / 5),
                             2 * std::cos(2 * pi / 5), 2 * std::cos(pi / 5)};
    REQUIRE(ev.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::fabs(ev[i] - want[i]) < 1e-12);

    // eigenvectors reproduce T v = lambda v
    std::vector<double> d2{1, -2, 0.5, 3, 0}, e2{0.7, 1.3, -0.2, 2.1};
    drg::Matrix z;
    auto ev2 = drg::tridiag_eigen(d2, e2, &z);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i) {
            double tv = d2[i] * z(i, j);
            if (i > 0) tv += e2[i - 1] * z(i - 1, j);
            if (i < 4) tv += e2[i] * z(i + 1, j);
            CHECK(std::fabs(tv - ev2[j] * z(i, j)) < 1e-10);
        }
}

TEST_CASE("dense symmetric eigensolver against jacobi") {
    auto a = random_symmetric(10, 7);
    oracle::Mat ao(10, std::vector<double>(10));
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) ao[i][j] = a(i, j);
    auto want = oracle::jacobi_eigenvalues(ao);   // descending

    std::vector<double> got;
    drg::Matrix q;
    drg::symmetric_eigen(a, got, q);   // ascending
    REQUIRE(got.size() == 10);
    for (int i = 0; i < 10; ++i) CHECK(std::fabs(got[i] - want[9 - i]) < 1e-9);

    // A q_j = lambda_j q_j
    for (int j = 0; j < 10; ++j)
        for (int i = 0; i < 10; ++i) {
            double av = 0;
            for (int l = 0; l < 10; ++l) av += a(i, l) * q(l, j);
            CHECK(std::fabs(av - got[j] * q(i, j)) < 1e-9);
        }
}

TEST_CASE("orthonormal basis growth detects rank") {
    // three vectors, rank two
    std::vector<std::vector<double>> vecs{{1, 0, 0, 0},
                                          {0, 1, 0, 0},
                                          {1, 1, 0, 0}};
    std::vector<std::vector<double>> basis;
    auto added = drg::grow_orthonormal_basis(basis, vecs, 1e-10);
    CHECK(added == 2);
    CHECK(basis.size() == 2);

    // growing with a vector outside the span adds exactly one more
    added = drg::grow_orthonormal_basis(basis, {{0, 0, 3, 4}}, 1e-10);
    CHECK(added == 1);
    CHECK(basis.size() == 3);
}

TEST_CASE("subspace gap separates equal and different spans") {
    std::vector<std::vector<double>> p{{1, 0, 0}, {0, 1, 0}};
    std::vector<std::vector<double>> q{{std::sqrt(0.5), std::sqrt(0.5), 0},
                                       {std::sqrt(0.5), -std::sqrt(0.5), 0}};
    CHECK(drg::subspace_gap(p, q) < 1e-12);

    std::vector<std::vector<double>> r{{0, 0, 1}};
    CHECK(drg::subspace_gap(p, r) > 0.99);
}
