#pragma once

#include "drg/rational.hpp"

#include <string>
#include <vector>

namespace drg {

// Intersection array {b_0,...,b_{D-1}; c_1,...,c_D} of a distance-regular
// graph, with the derived quantities that follow from it alone.
//
// Index conventions: b[i] = b_i for 0 <= i <= D-1; c[i] = c_i for 1 <= i <= D
// with c[0] = 0 as a sentinel; a[i] and shell[i] run 0..D.
struct IntersectionArray {
    int d = 0;                     // diameter, >= 3
    std::vector<Rational> b;
    std::vector<Rational> c;
    std::vector<Rational> a;       // a_i = k - b_i - c_i
    std::vector<Rational> shell;   // k_i = b_0...b_{i-1} / c_1...c_i
    Rational n;                    // sum of shell sizes

    const Rational& valency() const { return b[0]; }
    bool shells_integral() const;
};

// Builds the derived fields and validates: D >= 3, all b_i and c_i positive,
// c_1 = 1.  Throws std::invalid_argument on violation.  Non-integral shell
// sizes are legal here; feasibility reporting flags them.
IntersectionArray make_array(std::vector<Rational> b, std::vector<Rational> c);

// Parses "b0,b1,...,b_{D-1};c1,...,cD".  Entries are integers or "p/q";
// whitespace around tokens is ignored.  Throws std::invalid_argument.
IntersectionArray parse_array(const std::string& text);

std::string format_array(const IntersectionArray& ia);

// All p^h_{ij}, 0 <= h,i,j <= D, exact.
struct IntersectionNumbers {
    int d = 0;
    std::vector<Rational> p;   // flattened [h][i][j]

    const Rational& operator()(int h, int i, int j) const {
        return p[(static_cast<std::size_t>(h) * (d + 1) + i) * (d + 1) + j];
    }
    Rational& at(int h, int i, int j) {
        return p[(static_cast<std::size_t>(h) * (d + 1) + i) * (d + 1) + j];
    }
};

// Exact computation through the distance polynomials v_i: expand v_i * v_j in
// the basis {v_h} via the three-term recurrence; p^h_{ij} is the coefficient
// of v_h.
IntersectionNumbers intersection_numbers(const IntersectionArray& ia);

} // namespace drg
