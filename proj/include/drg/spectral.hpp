#pragma once

#include "drg/intersection_array.hpp"
#include "drg/linalg.hpp"

#include <vector>

namespace drg {

// Cosine sequence u_i(theta) from the forward recurrence
//   u_0 = 1,  u_1 = theta/k,
//   c_i u_{i-1} + a_i u_i + b_i u_{i+1} = theta u_i      (1 <= i <= D-1).
// theta is an eigenvalue of the graph exactly when the terminal condition
//   c_D u_{D-1} + a_D u_D = theta u_D
// also holds; `terminal_residual` measures it and `is_eigenvalue` applies the
// scale-aware tolerance.
struct CosineSequence {
    std::vector<double> u;
    double terminal_residual = 0.0;
    bool is_eigenvalue = false;
};

CosineSequence cosine_sequence(const IntersectionArray& ia, double theta,
                               double tol = 1e-8);

// Eigenvalues as the spectrum of the (D+1)x(D+1) tridiagonal intersection
// matrix (subdiagonal c, diagonal a, superdiagonal b), symmetrized by the
// diagonal similarity with entries sqrt(k_i).  Returned with theta[0] = k and
// the rest strictly descending.
std::vector<double> eigenvalues(const IntersectionArray& ia);

std::vector<double> multiplicities(const IntersectionArray& ia,
                                   const std::vector<double>& theta);

struct SpectralData {
    int d = 0;
    double n = 0.0;
    std::vector<double> shell;        // k_i as doubles
    std::vector<double> theta;        // theta[0] = k, rest descending
    std::vector<double> mult;
    std::vector<bool> mult_integral;  // within 1e-6 of an integer
    Matrix u;                         // u(i,j) = u_i(theta_j)
    double min_eigen_gap = 0.0;
};

SpectralData spectral_data(const IntersectionArray& ia, double tol = 1e-8);

// The four orthogonality relations between cosines, multiplicities and shell
// sizes; residuals are normalized by the magnitude of the diagonal target.
struct OrthogonalityReport {
    double cosine_row = 0.0;    // sum_l u_l(th_i) u_l(th_j) k_l
    double cosine_col = 0.0;    // sum_l u_i(th_l) u_j(th_l) m_l
    double poly_row = 0.0;      // same with v_l = k_l u_l, weight 1/k_l
    double poly_col = 0.0;
    double worst = 0.0;
    bool pass = false;
};

OrthogonalityReport verify_orthogonality(const IntersectionArray& ia,
                                         const SpectralData& sp,
                                         double tol = 1e-8);

// Cross-oracle route to the intersection numbers:
//   p^h_{ij} = k_i k_j / n * sum_l u_i(th_l) u_j(th_l) u_h(th_l) m_l.
double spectral_intersection_number(const SpectralData& sp, int h, int i, int j);

} // namespace drg
