#pragma once

#include "drg/intersection_array.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace drg {

struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;     // sorted neighbor lists
    std::vector<std::vector<int16_t>> dist;
    int diameter = 0;
    bool connected = true;
    std::string name;
};

// Built-in families.  Each must come out with diameter >= 3, otherwise
// std::invalid_argument.  johnson(n, k) normalizes k to min(k, n-k).
Graph hypercube(int d);
Graph hamming(int d, int q);
Graph johnson(int n, int k);
Graph cycle(int n);

// family is one of "hypercube", "hamming", "johnson", "cycle".
Graph build_family(const std::string& family, const std::vector<long>& params);

// Whitespace-separated "u v" pairs, one edge per line; '#' starts a comment.
// Vertices are nonnegative integers; isolated vertices up to max index exist.
Graph from_edge_list(const std::string& text, const std::string& name = "edge-list");

// Exhaustive distance-regularity check: for every ordered pair (y, z) count
// |Gamma_i(y) ∩ Gamma_j(z)| for all i, j and demand dependence on
// (dist(y,z), i, j) only.  On failure, the witness holds the first offending
// pair in row-major order with the two conflicting counts.
struct DrgWitness {
    int y = -1, z = -1;
    int h = 0, i = 0, j = 0;
    long count = 0, expected = 0;
};

struct DrgCheckResult {
    bool is_drg = false;
    std::string message;            // reason when not distance-regular
    IntersectionArray array;        // valid when is_drg
    DrgWitness witness;             // valid when a pair-count conflict exists
};

DrgCheckResult check_drg(const Graph& g);

} // namespace drg
