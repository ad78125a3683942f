#include "drg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace drg {

namespace {

std::vector<double> as_doubles(const std::vector<Rational>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
    return out;
}

} // namespace

CosineSequence cosine_sequence(const IntersectionArray& ia, double theta, double tol) {
    const int d = ia.d;
    auto b = as_doubles(ia.b), c = as_doubles(ia.c), a = as_doubles(ia.a);
    const double k = b[0];

    CosineSequence cs;
    cs.u.assign(d + 1, 0.0);
    cs.u[0] = 1.0;
    cs.u[1] = theta / k;
    for (int i = 1; i < d; ++i)
        cs.u[i + 1] = ((theta - a[i]) * cs.u[i] - c[i] * cs.u[i - 1]) / b[i];

    double lhs = c[d] * cs.u[d - 1] + a[d] * cs.u[d];
    double rhs = theta * cs.u[d];
    cs.terminal_residual = std::fabs(lhs - rhs);
    double scale = std::max(1.0, std::fabs(c[d] * cs.u[d - 1]) +
                                     std::fabs(a[d] * cs.u[d]) + std::fabs(rhs));
    cs.is_eigenvalue = cs.terminal_residual <= tol * scale;
    return cs;
}

std::vector<double> eigenvalues(const IntersectionArray& ia) {
    const int d = ia.d;
    auto b = as_doubles(ia.b), c = as_doubles(ia.c), a = as_doubles(ia.a);

    // symmetrize the tridiagonal intersection matrix by conjugating with
    // diag(sqrt(k_i)); the off-diagonal becomes sqrt(b_i c_{i+1})
    std::vector<double> diag(a), off(d);
    for (int i = 0; i < d; ++i) off[i] = std::sqrt(b[i] * c[i + 1]);
    auto asc = tridiag_eigen(diag, off);

    std::vector<double> th(d + 1);
    th[0] = b[0];                       // the valency, exactly
    for (int j = 1; j <= d; ++j) th[j] = asc[d - j];
    return th;
}

std::vector<double> multiplicities(const IntersectionArray& ia,
                                   const std::vector<double>& theta) {
    auto shells = as_doubles(ia.shell);
    double n = ia.n.get_d();
    std::vector<double> m(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        auto cs = cosine_sequence(ia, theta[j]);
        double s = 0.0;
        for (int l = 0; l <= ia.d; ++l) s += cs.u[l] * cs.u[l] * shells[l];
        m[j] = n / s;
    }
    return m;
}

SpectralData spectral_data(const IntersectionArray& ia, double tol) {
    SpectralData sp;
    sp.d = ia.d;
    sp.n = ia.n.get_d();
    sp.shell = as_doubles(ia.shell);
    sp.theta = eigenvalues(ia);
    sp.mult = multiplicities(ia, sp.theta);

    sp.mult_integral.assign(sp.mult.size(), false);
    for (std::size_t j = 0; j < sp.mult.size(); ++j)
        sp.mult_integral[j] =
            std::fabs(sp.mult[j] - std::round(sp.mult[j])) <= 1e-6 * std::max(1.0, sp.mult[j]);

    sp.u = Matrix(ia.d + 1, ia.d + 1);
    for (int j = 0; j <= ia.d; ++j) {
        auto cs = cosine_sequence(ia, sp.theta[j], tol);
        for (int i = 0; i <= ia.d; ++i) sp.u(i, j) = cs.u[i];
    }

    sp.min_eigen_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sp.theta.size(); ++i)
        for (std::size_t j = i + 1; j < sp.theta.size(); ++j)
            sp.min_eigen_gap = std::min(sp.min_eigen_gap, std::fabs(sp.theta[i] - sp.theta[j]));
    return sp;
}

OrthogonalityReport verify_orthogonality(const IntersectionArray&,
                                         const SpectralData& sp, double tol) {
    const int d = sp.d;
    const double n = sp.n;
    OrthogonalityReport rep;

    // rows of cosines against the shell weights
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            double s = 0;
            for (int l = 0; l <= d; ++l) s += sp.u(l, i) * sp.u(l, j) * sp.shell[l];
            double target = i == j ? n / sp.mult[i] : 0.0;
            double scale = std::sqrt((n / sp.mult[i]) * (n / sp.mult[j]));
            rep.cosine_row = std::max(rep.cosine_row, std::fabs(s - target) / scale);
        }

    // columns of cosines against the multiplicity weights
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            double s = 0;
            for (int l = 0; l <= d; ++l) s += sp.u(i, l) * sp.u(j, l) * sp.mult[l];
            double target = i == j ? n / sp.shell[i] : 0.0;
            double scale = std::sqrt((n / sp.shell[i]) * (n / sp.shell[j]));
            rep.cosine_col = std::max(rep.cosine_col, std::fabs(s - target) / scale);
        }

    // the eigenmatrix P(i,j) = k_j u_j(th_i) and its dual Q(i,j) = m_j u_i(th_j)
    // are inverse to each other up to the factor n, in both orders
    auto pq = [&](int i, int l) {
        double s = 0;
        for (int j = 0; j <= d; ++j)
            s += sp.shell[j] * sp.u(j, i) * sp.mult[l] * sp.u(j, l);
        return s;
    };
    auto qp = [&](int i, int l) {
        double s = 0;
        for (int j = 0; j <= d; ++j)
            s += sp.mult[j] * sp.u(i, j) * sp.shell[l] * sp.u(l, j);
        return s;
    };
    for (int i = 0; i <= d; ++i)
        for (int l = 0; l <= d; ++l) {
            double target = i == l ? n : 0.0;
            rep.poly_row = std::max(rep.poly_row, std::fabs(pq(i, l) - target) / n);
            rep.poly_col = std::max(rep.poly_col, std::fabs(qp(i, l) - target) / n);
        }

    rep.worst = std::max({rep.cosine_row, rep.cosine_col, rep.poly_row, rep.poly_col});
    rep.pass = rep.worst <= tol;
    return rep;
}

double spectral_intersection_number(const SpectralData& sp, int h, int i, int j) {
    double s = 0;
    for (int l = 0; l <= sp.d; ++l)
        s += sp.u(i, l) * sp.u(j, l) * sp.u(h, l) * sp.mult[l];
    return sp.shell[i] * sp.shell[j] / sp.n * s;
}

} // namespace drg
