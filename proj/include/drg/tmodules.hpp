#pragma once

#include "drg/duality.hpp"
#include "drg/graph_algebra.hpp"

#include <cstdint>
#include <vector>

namespace drg {

// The primary module in both of its standard bases: shell indicators 1_i and
// duals 1*_i = n E_i xhat.  Every entry of the action tables and Gram
// matrices is checked against its closed form.
struct PrimaryModule {
    std::vector<std::vector<double>> shell_basis;
    std::vector<std::vector<double>> dual_basis;
    double action_residual = 0.0;
    double gram_residual = 0.0;
    double transition_residual = 0.0;
    bool pass = false;
};

PrimaryModule primary_module(const GraphAlgebra& alg, const Subconstituent& sub,
                             double tol = 1e-8);

struct TModule {
    std::vector<std::vector<double>> basis;   // orthonormal rows
    int endpoint = -1, diameter_ = -1;
    int dual_endpoint = -1, dual_diameter = -1;
    std::vector<int> shell_dims;        // dim E*_i W
    std::vector<int> dual_shell_dims;   // dim E_j W, in qp order
    bool thin = false, dual_thin = false;
    double invariance_residual = 0.0;
    bool td_pair_ok = false;
    double td_pair_residual = 0.0;
};

struct Decomposition {
    std::vector<TModule> modules;
    int total_dim = 0;
    std::uint64_t seed = 0;
    double worst_residual = 0.0;
    // modules grouped by identical (endpoint, dual endpoint, diameter,
    // shell dims); invariant-equivalent, which is weaker than isomorphic
    std::vector<std::vector<int>> groups;
};

// Orthogonal decomposition of the standard module into irreducible modules
// under the algebra generated by A and the dual adjacency matrix of the
// given Q-polynomial ordering.  Deterministic for a fixed seed: a random
// symmetric element of the commutant is eigendecomposed, eigenspaces are
// refined by closure under {A, A*, E*_i}, and every emitted module is
// verified for invariance and irreducibility.
Decomposition decompose(const GraphAlgebra& alg, const Subconstituent& sub,
                        const QPolyStructure& qp, std::uint64_t seed = 0,
                        double tol = 1e-8);

// Definition-level check that (A, A*) act on span(basis) as a tridiagonal
// pair: simultaneous invariance, tridiagonal flow of each eigenspace ladder
// against the other, and irreducibility.
struct TDPairReport {
    bool ok = false;
    double flow_residual = 0.0;        // worst of the two ladder conditions
    double invariance_residual = 0.0;
    bool irreducible = false;
    int d = -1, dual_d = -1;           // ladder lengths; equal when ok
};

TDPairReport verify_tridiagonal_pair(const GraphAlgebra& alg,
                                     const Subconstituent& sub,
                                     const QPolyStructure& qp,
                                     const std::vector<std::vector<double>>& basis,
                                     double tol = 1e-8);

// Residuals of the two tridiagonal relations as full matrix identities, and
// of the two Askey-Wilson relations restricted to the primary module.  Each
// residual is normalized by the largest term entering the expression.
struct RelationReport {
    double td1 = 0.0, td2 = 0.0;
    double aw1 = 0.0, aw2 = 0.0;
    bool pass = false;
};

RelationReport verify_relations(const GraphAlgebra& alg, const Subconstituent& sub,
                                const QPolyStructure& qp, const TDParams& td,
                                const AWParams& aw, double tol = 1e-8);

} // namespace drg
