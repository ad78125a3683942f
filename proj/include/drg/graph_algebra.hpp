#pragma once

#include "drg/duality.hpp"
#include "drg/graph.hpp"
#include "drg/linalg.hpp"
#include "drg/spectral.hpp"

#include <string>
#include <vector>

namespace drg {

// Distance matrices and primitive idempotents of a distance-regular graph,
// idempotents in the natural eigenvalue order.  Self-contained: distance
// information is recoverable from the A_i.
struct GraphAlgebra {
    IntersectionArray array;
    SpectralData sp;
    std::vector<Matrix> A;
    std::vector<Matrix> E;
    double build_residual = 0.0;   // worst defect among the defining identities
};

GraphAlgebra bose_mesner(const Graph& g, const IntersectionArray& ia,
                         double tol = 1e-8);

// Dual idempotents and dual distance matrices at a base vertex, plus the
// central idempotent e0 computed along both of its defining routes; the gap
// between the routes is itself a correctness check.
struct Subconstituent {
    int base = 0;
    std::vector<Matrix> Estar;
    std::vector<Matrix> Astar;     // natural eigenvalue order
    Matrix e0;
    double e0_route_gap = 0.0;
};

Subconstituent subconstituent(const GraphAlgebra& alg, int base);

struct IdentityCheck {
    std::string name;
    double frobenius = 0.0;
    double max_abs = 0.0;
    bool pass = false;
};

struct IdentityReport {
    bool all_pass = true;
    double worst = 0.0;
    std::vector<IdentityCheck> checks;
};

// The residual suite over the subconstituent algebra: the sixteen one-sided
// reduction rules, the sandwich identities, the two e0 formulas and its
// idempotent/centrality properties, triple-product vanishing against the
// p- and q-zero patterns, and the squared-norm identities.
IdentityReport verify_identities(const GraphAlgebra& alg, const Subconstituent& sub,
                                 const KreinTable& kr, double tol = 1e-8);

// Which eigenspaces the entrywise products E_i yhat o E_j zhat reach: an
// orthonormal basis of their span is grown, then projected onto each E_h V.
// Returns the sorted list of h with nonzero projection.
std::vector<int> hadamard_span_check(const GraphAlgebra& alg, int i, int j,
                                     double tol = 1e-8);

// Filtration test of a candidate Q-polynomial ordering: the span of the
// entrywise products of up to i copies of E_1 V must equal
// E_0 V + ... + E_i V at every level i.  Also checks nondegeneracy of E_1
// (pairwise distinct columns) and the three-term containment
// E_1 V o E_i V  subset of  E_{i-1} V + E_i V + E_{i+1} V.
struct FiltrationResult {
    bool qpoly = false;
    bool nondegenerate = false;
    int first_bad_level = -1;
    double worst_gap = 0.0;
    double containment_residual = 0.0;
};

FiltrationResult filtration_qpoly_check(const GraphAlgebra& alg,
                                        const std::vector<int>& order,
                                        double tol = 1e-8);

std::vector<double> norton_product(const GraphAlgebra& alg, int j,
                                   const std::vector<double>& u,
                                   const std::vector<double>& v);

// Balanced-set test for the idempotent at natural index e_index: over all
// (i, j, y, z) compare the difference of the two Gamma-sums against its
// predicted multiple of E yhat - E zhat, and separately test the span
// condition for (i, j) = (1, 2).  Degenerate idempotents are reported as
// not applicable rather than pass/fail.
struct BalancedSetResult {
    bool applicable = false;
    bool balanced = false;
    double max_residual = 0.0;
    double span_residual = 0.0;    // (1,2) span condition
};

BalancedSetResult balanced_set_check(const GraphAlgebra& alg, int e_index,
                                     double tol = 1e-8);

} // namespace drg
