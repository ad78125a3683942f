#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drg/intersection_array.hpp"
#include "oracles.hpp"

#include <stdexcept>

using drg::IntersectionArray;
using drg::Rational;

TEST_CASE("parsing the 3-cube array") {
    auto ia = drg::parse_array("3,2,1;1,2,3");
    CHECK(ia.d == 3);
    CHECK(ia.valency() == 3);
    CHECK(ia.b == std::vector<Rational>{3, 2, 1});
    CHECK(ia.c == std::vector<Rational>{0, 1, 2, 3});
    CHECK(ia.a == std::vector<Rational>{0, 0, 0, 0});
    CHECK(ia.shell == std::vector<Rational>{1, 3, 3, 1});
    CHECK(ia.n == 8);
    CHECK(ia.shells_integral());
}

TEST_CASE("whitespace and rational entries") {
    auto ia = drg::parse_array("  3 ,2, 1 ;\t1, 2 , 3\n");
    CHECK(ia.n == 8);
    auto ir = drg::parse_array("7/2,2,1;1,2,7/2");
    CHECK(ir.valency() == Rational(7, 2));
    CHECK(ir.a[1] == Rational(1, 2));
}

TEST_CASE("shell sizes follow the quotient formula") {
    auto ia = drg::parse_array("3,2,1;1,1,3");
    CHECK(ia.shell == std::vector<Rational>{1, 3, 6, 2});
    CHECK(ia.n == 12);
    CHECK(ia.a == std::vector<Rational>{0, 0, 1, 0});
}

TEST_CASE("non-integral shells parse but are flagged") {
    auto ia = drg::parse_array("3,2,1;1,2,2");
    CHECK(ia.shell[3] == Rational(3, 2));
    CHECK_FALSE(ia.shells_integral());
}

TEST_CASE("rejects malformed and invalid arrays") {
    CHECK_THROWS_AS(drg::parse_array(""), std::invalid_argument);
    CHECK_THROWS_AS(drg::parse_array("abc"), std::invalid_argument);
    CHECK_THROWS_AS(drg::parse_array("3,2,1"), std::invalid_argument);
    CHECK_THROWS_AS(drg::parse_array("3,2,1;1,2"), std::invalid_argument);

    // diameter below 3
    CHECK_THROWS_AS(drg::parse_array("3,2;1,2"), std::invalid_argument);

    // nonpositive entries
    CHECK_THROWS_AS(drg::parse_array("3,0,1;1,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(drg::parse_array("3,2,-1;1,2,3"), std::invalid_argument);

    // c_1 must be 1
    CHECK_THROWS_AS(drg::parse_array("3,2,1;2,2,3"), std::invalid_argument);

    // c_3 = 4 forces a_3 = -1
    CHECK_THROWS_AS(drg::parse_array("3,2,1;1,2,4"), std::invalid_argument);
}

TEST_CASE("format round-trips") {
    auto ia = drg::parse_array("15,8,3;1,4,9");
    CHECK(drg::format_array(ia) == "15,8,3;1,4,9");
    auto ir = drg::parse_array("7/2,2,1;1,2,7/2");
    CHECK(drg::format_array(ir) == "7/2,2,1;1,2,7/2");
}

TEST_CASE("cube intersection numbers against a brute-force count") {
    auto ia = drg::parse_array("3,2,1;1,2,3");
    auto p = drg::intersection_numbers(ia);

    CHECK(p(1, 1, 2) == 2);

    auto g = oracle::bit_cube(3);
    for (int h = 0; h <= 3; ++h) {
        // pick any pair at distance h
        int y = 0, z = -1;
        for (int v = 0; v < g.n; ++v)
            if (g.dist[y][v] == h) {
                z = v;
                break;
            }
        REQUIRE(z >= 0);
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 3; ++j)
                CHECK(p(h, i, j) == oracle::triple_count(g, y, z, i, j));
    }
}

TEST_CASE("johnson J(8,3) intersection numbers against a brute-force count") {
    auto ia = drg::parse_array("15,8,3;1,4,9");
    auto p = drg::intersection_numbers(ia);
    auto g = oracle::johnson_sets(8, 3);
    REQUIRE(g.n == 56);
    for (int h = 0; h <= 3; ++h) {
        int y = 0, z = -1;
        for (int v = 0; v < g.n; ++v)
            if (g.dist[y][v] == h) {
                z = v;
                break;
            }
        REQUIRE(z >= 0);
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 3; ++j)
                CHECK(p(h, i, j) == oracle::triple_count(g, y, z, i, j));
    }
}

TEST_CASE("intersection number invariants hold exactly") {
    for (const char* text : {"3,2,1;1,2,3", "6,4,2;1,2,3", "15,8,3;1,4,9",
                             "2,1,1;1,1,1", "7/2,2,1;1,2,7/2"}) {
        auto ia = drg::parse_array(text);
        auto p = drg::intersection_numbers(ia);
        int d = ia.d;
        for (int h = 0; h <= d; ++h)
            for (int i = 0; i <= d; ++i) {
                for (int j = 0; j <= d; ++j) {
                    CHECK(p(h, i, j) == p(h, j, i));

                    // triangle pattern
                    if (i + j < h || h + j < i || h + i < j) CHECK(p(h, i, j) == 0);
                    if (i + j == h || h + j == i || h + i == j) CHECK(p(h, i, j) != 0);

                    // weighted symmetry k_h p^h_{ij} = k_i p^i_{jh} = k_j p^j_{hi}
                    CHECK(ia.shell[h] * p(h, i, j) == ia.shell[i] * p(i, j, h));
                    CHECK(ia.shell[h] * p(h, i, j) == ia.shell[j] * p(j, h, i));
                }
                CHECK(p(h, 0, i) == (h == i ? Rational(1) : Rational(0)));
                CHECK(p(0, h, i) == (h == i ? ia.shell[i] : Rational(0)));

                // row sums give the shell size
                Rational s = 0;
                for (int i2 = 0; i2 <= d; ++i2) s += p(h, i2, i);
                CHECK(s == ia.shell[i]);
            }
    }
}

TEST_CASE("a_i read off the intersection numbers") {
    auto ia = drg::parse_array("6,4,2;1,2,3");
    auto p = drg::intersection_numbers(ia);
    for (int i = 0; i <= 3; ++i) CHECK(p(i, 1, i) == ia.a[i]);
    for (int i = 1; i <= 3; ++i) CHECK(p(i, 1, i - 1) == ia.c[i]);
    for (int i = 0; i < 3; ++i) CHECK(p(i, 1, i + 1) == ia.b[i]);
}
