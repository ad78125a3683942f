#pragma once

#include "drg/intersection_array.hpp"
#include "drg/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drg {

// Krein parameters q^h_{ij} under a fixed eigenvalue ordering.  `order` maps
// position -> natural eigenvalue index, with order[0] = 0.  An entry counts
// as zero when |q| <= zero_tol * max(1, m_h); the Krein condition fails when
// some entry sits below -zero_tol * max(1, m_h).
struct KreinTable {
    int d = 0;
    std::vector<int> order;
    std::vector<double> mult;     // multiplicities in table order
    std::vector<double> q;        // flattened [h][i][j]
    double zero_tol = 1e-8;
    double min_scaled_entry = 0.0;   // min over entries of q / max(1, m_h)
    bool krein_ok = true;

    double operator()(int h, int i, int j) const {
        return q[(static_cast<std::size_t>(h) * (d + 1) + i) * (d + 1) + j];
    }
    bool is_zero(int h, int i, int j) const;
};

KreinTable krein_parameters(const SpectralData& sp, const std::vector<int>& order,
                            double tol = 1e-8);
KreinTable krein_parameters(const SpectralData& sp, double tol = 1e-8);

// A Q-polynomial ordering of the eigenvalues together with the dual side it
// induces: dual intersection numbers (cs, as, bs), dual eigenvalues, dual
// cosines, and the residuals of the checks tying the two sides together.
struct QPolyStructure {
    std::vector<int> order;            // position -> natural eigenvalue index
    std::vector<double> theta;         // reordered eigenvalues
    std::vector<double> theta_star;    // theta*_i = m_1 u_i(theta_1)
    std::vector<double> cs, as, bs;    // dual array; cs[0] = 0, bs has size D
    Matrix ustar;                      // ustar(j, i) = u*_j(theta*_i)
    double duality_residual = 0.0;     // max |u_i(theta_j) - u*_j(theta*_i)|
    double dual_orth_residual = 0.0;
    double dual_mult_residual = 0.0;   // multiplicities rebuilt from cs/bs
};

// Reads the dual structure off a Krein table for the given ordering and
// verifies cosine duality and dual orthogonality.
QPolyStructure dual_structure(const SpectralData& sp, const KreinTable& natural,
                              const std::vector<int>& order, double tol = 1e-8);

// Detection straight from the definition: for each nontrivial idempotent,
// form the graph on {0..D} joining i,j when q^cand_{ij} != 0, demand a path
// starting at 0, and verify the full vanishing pattern under the resulting
// order.
std::vector<QPolyStructure> qpoly_orderings_direct(const SpectralData& sp,
                                                   double tol = 1e-8);

// Three-condition test of a candidate dual eigenvalue sequence:
//   (i)  theta*_i != theta*_0 for i >= 1;
//   (ii) theta*_{i-1} - beta theta*_i + theta*_{i+1} constant (= gamma*);
//  (iii) a_i (theta*_i - theta*_{i-1})(theta*_i - theta*_{i+1})
//          = gamma theta*_i^2 + omega theta*_i + eta*   for 0 <= i <= D,
// with boundary terms theta*_{-1}, theta*_{D+1} from extending (ii).
// (iii) is solved exactly on three points and verified on the rest.
struct PascasioResult {
    bool accepted = false;
    std::string reject_reason;
    double beta = 0.0, gamma_star = 0.0;
    double gamma = 0.0, omega = 0.0, eta_star = 0.0;
    double residual_ii = 0.0, residual_iii = 0.0;
    double theta_star_m1 = 0.0, theta_star_dp1 = 0.0;
};

PascasioResult pascasio_check(const IntersectionArray& ia,
                              const std::vector<double>& theta_star,
                              double tol = 1e-8);

// Rebuild the eigenvalue order from the dual data alone:
//   theta_0 = k, theta_1 = k theta*_1 / theta*_0,
//   theta_{i+1} = gamma + beta theta_i - theta_{i-1},
// then match against the spectrum.
struct ReconstructedOrder {
    std::vector<double> theta;
    std::vector<int> order;        // position -> natural index, valid if ok
    bool ok = false;
    double max_mismatch = 0.0;
};

ReconstructedOrder reconstruct_eigenvalue_order(const SpectralData& sp,
                                                double theta_star0,
                                                double theta_star1,
                                                double beta, double gamma,
                                                double tol = 1e-8);

// Recurrence classification of a real sequence theta_0..theta_D:
// recurrent, beta-recurrent, (beta,gamma)-recurrent, (beta,gamma,rho)-
// recurrent, plus the quadratic-product identity
//   (2-beta) th_i^2 - 2 gamma th_i - rho = (th_i - th_{i-1})(th_i - th_{i+1})
// over the boundary-extended range.
struct RecurrenceClass {
    bool recurrent = false;
    bool beta_recurrent = false;
    bool beta_gamma = false;
    bool beta_gamma_rho = false;
    double beta = 0.0, gamma = 0.0, rho = 0.0;
    double quad_identity_residual = 0.0;
};

RecurrenceClass recurrence_classify(const std::vector<double>& th,
                                    double tol = 1e-8);

// Tridiagonal-relation scalars derived from the two eigenvalue sequences.
// Both sequences must yield the same beta; gamma/rho come from the primal
// sequence and gamma*/rho* from the dual, each verified constant across i.
struct TDParams {
    double beta = 0.0;
    double gamma = 0.0, gamma_star = 0.0;
    double rho = 0.0, rho_star = 0.0;
    double beta_gap = 0.0;           // |beta from theta - beta from theta*|
    double max_residual = 0.0;
    double theta_m1 = 0.0, theta_dp1 = 0.0;
    double theta_star_m1 = 0.0, theta_star_dp1 = 0.0;
};

TDParams td_parameters(const std::vector<double>& theta,
                       const std::vector<double>& theta_star,
                       double tol = 1e-8);

// Askey-Wilson scalars on the primary module.  omega is fixed at i = 1 and
// verified against both defining families across all i; eta at i = 0, eta*
// likewise.  Cross-i disagreement beyond tol throws std::domain_error.
struct AWParams {
    double omega = 0.0, eta = 0.0, eta_star = 0.0;
    double max_residual = 0.0;
};

AWParams aw_parameters(const std::vector<double>& a,
                       const std::vector<double>& a_star,
                       const std::vector<double>& theta,
                       const std::vector<double>& theta_star,
                       const TDParams& td, double tol = 1e-8);

// Classical parameter search: diameter D fixed, solve
//   c_2 = [2](1 + alpha),   c_3 = [3](1 + alpha [2])
// for integer b (excluding 0 and -1), alpha, then sigma from b_0, where
// [i] = 1 + b + ... + b^{i-1}.  A candidate is kept only if every b_i and
// c_i reproduces exactly.
struct ClassicalParams {
    int d = 0;
    long b = 0;
    Rational alpha, sigma;
};

std::vector<ClassicalParams> classical_parameters(const IntersectionArray& ia);

// The Q-polynomial structure a classical parameter set predicts: eigenvalue
// theta = b_1/b - 1, dual sequence theta*_i proportional to
// 1 + (theta/k - 1)[i] b^{1-i}, and the eigenvalue order theta_i = b_i/b^i - [i].
struct ClassicalQPoly {
    double theta = 0.0;
    int theta_index = -1;              // position of theta in the spectrum
    std::vector<double> theta_star;
    PascasioResult pascasio;
    std::vector<int> order;
    double order_residual = 0.0;
};

ClassicalQPoly classical_qpoly(const IntersectionArray& ia, const SpectralData& sp,
                               const ClassicalParams& cp, double tol = 1e-8);

} // namespace drg
