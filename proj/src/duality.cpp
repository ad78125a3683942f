#include "drg/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace drg {

namespace {

void check_order(int d, const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != d + 1)
        throw std::invalid_argument("ordering has the wrong length");
    if (order[0] != 0)
        throw std::invalid_argument("ordering must keep position 0 at index 0");
    std::vector<bool> seen(d + 1, false);
    for (int v : order) {
        if (v < 0 || v > d || seen[v])
            throw std::invalid_argument("ordering is not a permutation");
        seen[v] = true;
    }
}

// 3x3 linear solve by Cramer's rule; returns false when the determinant is
// negligible against the matrix scale.
bool solve3(const double m[3][3], const double r[3], double x[3]) {
    auto det3 = [](const double a[3][3]) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    double scale = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(m[i][j]));
    double d = det3(m);
    if (std::fabs(d) <= 1e-12 * std::max(1.0, scale * scale * scale)) return false;
    for (int c = 0; c < 3; ++c) {
        double t[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t[i][j] = j == c ? r[i] : m[i][j];
        x[c] = det3(t) / d;
    }
    return true;
}

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

} // namespace

bool KreinTable::is_zero(int h, int i, int j) const {
    return std::fabs((*this)(h, i, j)) <= zero_tol * std::max(1.0, mult[h]);
}

KreinTable krein_parameters(const SpectralData& sp, const std::vector<int>& order,
                            double tol) {
    const int d = sp.d;
    check_order(d, order);

    KreinTable kr;
    kr.d = d;
    kr.order = order;
    kr.zero_tol = tol;
    kr.mult.resize(d + 1);
    for (int i = 0; i <= d; ++i) kr.mult[i] = sp.mult[order[i]];
    kr.q.assign(static_cast<std::size_t>(d + 1) * (d + 1) * (d + 1), 0.0);

    kr.min_scaled_entry = std::numeric_limits<double>::infinity();
    for (int h = 0; h <= d; ++h)
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) {
                double s = 0;
                for (int l = 0; l <= d; ++l)
                    s += sp.u(l, order[i]) * sp.u(l, order[j]) * sp.u(l, order[h]) *
                         sp.shell[l];
                double q = kr.mult[i] * kr.mult[j] / sp.n * s;
                kr.q[(static_cast<std::size_t>(h) * (d + 1) + i) * (d + 1) + j] = q;
                kr.min_scaled_entry =
                    std::min(kr.min_scaled_entry, q / std::max(1.0, kr.mult[h]));
            }
    kr.krein_ok = kr.min_scaled_entry >= -tol;
    return kr;
}

KreinTable krein_parameters(const SpectralData& sp, double tol) {
    std::vector<int> id(sp.d + 1);
    std::iota(id.begin(), id.end(), 0);
    return krein_parameters(sp, id, tol);
}

QPolyStructure dual_structure(const SpectralData& sp, const KreinTable& natural,
                              const std::vector<int>& order, double tol) {
    const int d = sp.d;
    check_order(d, order);

    QPolyStructure qp;
    qp.order = order;
    qp.theta.resize(d + 1);
    for (int i = 0; i <= d; ++i) qp.theta[i] = sp.theta[order[i]];

    const int e = order[1];
    qp.theta_star.resize(d + 1);
    for (int i = 0; i <= d; ++i) qp.theta_star[i] = sp.mult[e] * sp.u(i, e);

    // dual intersection numbers straight off the reordered Krein table
    auto qt = [&](int h, int i, int j) { return natural(order[h], order[i], order[j]); };
    qp.cs.assign(d + 1, 0.0);
    qp.as.assign(d + 1, 0.0);
    qp.bs.assign(d, 0.0);
    for (int i = 1; i <= d; ++i) qp.cs[i] = qt(i, 1, i - 1);
    for (int i = 0; i <= d; ++i) qp.as[i] = qt(i, 1, i);
    for (int i = 0; i < d; ++i) qp.bs[i] = qt(i, 1, i + 1);

    // dual cosines from the same recurrence run on the dual array
    const double kstar = qp.bs[0];
    qp.ustar = Matrix(d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
        double ts = qp.theta_star[i];
        qp.ustar(0, i) = 1.0;
        qp.ustar(1, i) = ts / kstar;
        for (int j = 1; j < d; ++j)
            qp.ustar(j + 1, i) =
                ((ts - qp.as[j]) * qp.ustar(j, i) - qp.cs[j] * qp.ustar(j - 1, i)) /
                qp.bs[j];
    }

    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j)
            qp.duality_residual = std::max(
                qp.duality_residual, std::fabs(sp.u(i, order[j]) - qp.ustar(j, i)));

    // dual shell sizes rebuilt from the dual array; they should reproduce the
    // multiplicities in table order
    std::vector<double> kshell(d + 1, 1.0);
    for (int j = 1; j <= d; ++j) kshell[j] = kshell[j - 1] * qp.bs[j - 1] / qp.cs[j];
    for (int j = 0; j <= d; ++j)
        qp.dual_mult_residual =
            std::max(qp.dual_mult_residual, std::fabs(kshell[j] - sp.mult[order[j]]) /
                                                std::max(1.0, sp.mult[order[j]]));

    // dual orthogonality: columns of dual cosines weighted by the dual shells
    // against n over the primal shell sizes
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            double s = 0;
            for (int l = 0; l <= d; ++l)
                s += kshell[l] * qp.ustar(l, i) * qp.ustar(l, j);
            double target = i == j ? sp.n / sp.shell[i] : 0.0;
            double scale = std::sqrt((sp.n / sp.shell[i]) * (sp.n / sp.shell[j]));
            qp.dual_orth_residual =
                std::max(qp.dual_orth_residual, std::fabs(s - target) / scale);
        }

    (void)tol;
    return qp;
}

std::vector<QPolyStructure> qpoly_orderings_direct(const SpectralData& sp, double tol) {
    const int d = sp.d;
    auto kr = krein_parameters(sp, tol);
    std::vector<QPolyStructure> found;

    for (int e = 1; e <= d; ++e) {
        // graph on the idempotent indices: i ~ j when q^j_{e i} does not vanish
        std::vector<std::vector<bool>> adj(d + 1, std::vector<bool>(d + 1, false));
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j)
                if (i != j && (!kr.is_zero(j, e, i) || !kr.is_zero(i, e, j)))
                    adj[i][j] = adj[j][i] = true;

        // walk from 0: the graph must be a chordless path visiting everything
        std::vector<int> order{0};
        std::vector<bool> used(d + 1, false);
        used[0] = true;
        bool ok = true;
        int cur = 0;
        while (static_cast<int>(order.size()) <= d) {
            int next = -1, count = 0;
            for (int j = 0; j <= d; ++j)
                if (adj[cur][j] && !used[j]) {
                    next = j;
                    ++count;
                }
            if (count != 1) {
                ok = false;
                break;
            }
            order.push_back(next);
            used[next] = true;
            cur = next;
        }
        if (!ok || order[1] != e) continue;

        // second route: confirm the tridiagonal vanishing pattern entry by entry
        for (int h = 0; h <= d && ok; ++h)
            for (int j = 0; j <= d && ok; ++j) {
                bool zero = kr.is_zero(order[h], e, order[j]);
                if (std::abs(h - j) > 1 && !zero) ok = false;
                if (std::abs(h - j) == 1 && zero) ok = false;
            }
        if (!ok) continue;

        found.push_back(dual_structure(sp, kr, order, tol));
    }
    return found;
}

PascasioResult pascasio_check(const IntersectionArray& ia,
                              const std::vector<double>& ts, double tol) {
    PascasioResult res;
    const int d = ia.d;
    if (static_cast<int>(ts.size()) != d + 1)
        throw std::invalid_argument("dual sequence has the wrong length");
    const double scale = std::max(1.0, max_abs(ts));

    for (int i = 1; i <= d; ++i)
        if (std::fabs(ts[i] - ts[0]) <= tol * scale) {
            res.reject_reason = "degenerate dual sequence: theta*_" +
                                std::to_string(i) + " equals theta*_0";
            return res;
        }

    std::vector<double> a(d + 1);
    for (int i = 0; i <= d; ++i) a[i] = ia.a[i].get_d();

    // beta from demanding theta*_{i-1} - beta theta*_i + theta*_{i+1}
    // independent of i; each consecutive pair gives one linear equation
    bool have_beta = false;
    double beta = 0;
    for (int i = 1; i + 2 <= d; ++i) {
        double den = ts[i + 1] - ts[i];
        if (std::fabs(den) <= tol * scale) continue;
        double cand = (ts[i] + ts[i + 2] - ts[i - 1] - ts[i + 1]) / den;
        if (!have_beta) {
            beta = cand;
            have_beta = true;
        } else if (std::fabs(cand - beta) > tol * std::max(1.0, std::fabs(beta))) {
            res.reject_reason = "no consistent beta across the dual sequence";
            res.residual_ii = std::fabs(cand - beta);
            return res;
        }
    }

    auto lhs = [&](int i, double tm1, double tp1) {
        double lo = i == 0 ? tm1 : ts[i - 1];
        double hi = i == d ? tp1 : ts[i + 1];
        return a[i] * (ts[i] - lo) * (ts[i] - hi);
    };

    // quadratic fit gamma ts^2 + omega ts + eta* on the first three points;
    // i = 0 carries no boundary term because a_0 = 0
    auto fit_quadratic = [&](double& g, double& w, double& es) {
        double m[3][3], r[3];
        for (int i = 0; i < 3; ++i) {
            m[i][0] = ts[i] * ts[i];
            m[i][1] = ts[i];
            m[i][2] = 1.0;
            r[i] = lhs(i, 0.0, 0.0);   // boundary unused for i = 1, 2; a_0 = 0 kills i = 0
        }
        double x[3];
        if (!solve3(m, r, x)) return false;
        g = x[0];
        w = x[1];
        es = x[2];
        return true;
    };

    if (!have_beta) {
        // every middle difference vanished; pin beta from the i = D equation,
        // whose boundary term is the only place it still appears
        double g, w, es;
        if (!fit_quadratic(g, w, es)) {
            res.reject_reason = "degenerate dual sequence: quadratic fit is singular";
            return res;
        }
        double c0 = ts[d] + ts[d - 1] - ts[0] - ts[2];
        double c1 = ts[1] - ts[d];
        double lead = a[d] * (ts[d] - ts[d - 1]);
        if (std::fabs(lead) <= tol * scale * scale ||
            std::fabs(c1) <= tol * scale) {
            res.reject_reason = "beta is underdetermined";
            return res;
        }
        double rd = g * ts[d] * ts[d] + w * ts[d] + es;
        beta = (rd / lead - c0) / c1;
        have_beta = true;
    }
    res.beta = beta;

    res.gamma_star = ts[0] - beta * ts[1] + ts[2];
    double scale_ii = std::max(1.0, (1.0 + std::fabs(beta)) * scale);
    for (int i = 1; i + 1 <= d; ++i)
        res.residual_ii = std::max(
            res.residual_ii,
            std::fabs(ts[i - 1] - beta * ts[i] + ts[i + 1] - res.gamma_star));
    if (res.residual_ii > tol * scale_ii) {
        res.reject_reason = "second difference is not constant";
        return res;
    }

    res.theta_star_m1 = res.gamma_star + beta * ts[0] - ts[1];
    res.theta_star_dp1 = res.gamma_star + beta * ts[d] - ts[d - 1];

    if (!fit_quadratic(res.gamma, res.omega, res.eta_star)) {
        res.reject_reason = "degenerate dual sequence: quadratic fit is singular";
        return res;
    }
    for (int i = 0; i <= d; ++i) {
        double want = res.gamma * ts[i] * ts[i] + res.omega * ts[i] + res.eta_star;
        double got = lhs(i, res.theta_star_m1, res.theta_star_dp1);
        double sc = std::max(1.0, std::fabs(want) + std::fabs(got));
        res.residual_iii = std::max(res.residual_iii, std::fabs(got - want) / sc);
    }
    if (res.residual_iii > tol) {
        res.reject_reason = "quadratic relation fails beyond the fitted points";
        return res;
    }
    res.accepted = true;
    return res;
}

ReconstructedOrder reconstruct_eigenvalue_order(const SpectralData& sp,
                                                double theta_star0,
                                                double theta_star1, double beta,
                                                double gamma, double tol) {
    const int d = sp.d;
    ReconstructedOrder rec;
    rec.theta.resize(d + 1);
    rec.theta[0] = sp.theta[0];
    rec.theta[1] = sp.theta[0] * theta_star1 / theta_star0;
    for (int i = 1; i < d; ++i)
        rec.theta[i + 1] = gamma + beta * rec.theta[i] - rec.theta[i - 1];

    const double scale = std::max(1.0, max_abs(sp.theta));
    rec.order.assign(d + 1, -1);
    std::vector<bool> taken(d + 1, false);
    rec.ok = true;
    for (int i = 0; i <= d; ++i) {
        int best = -1;
        double gap = std::numeric_limits<double>::infinity();
        for (int j = 0; j <= d; ++j) {
            double g = std::fabs(rec.theta[i] - sp.theta[j]);
            if (g < gap) {
                gap = g;
                best = j;
            }
        }
        rec.max_mismatch = std::max(rec.max_mismatch, gap);
        if (gap > tol * scale || taken[best]) rec.ok = false;
        else {
            taken[best] = true;
            rec.order[i] = best;
        }
    }
    if (!rec.ok) rec.order.clear();
    return rec;
}

RecurrenceClass recurrence_classify(const std::vector<double>& th, double tol) {
    RecurrenceClass rc;
    const int d = static_cast<int>(th.size()) - 1;
    if (d < 3) return rc;
    const double scale = std::max(1.0, max_abs(th));

    bool have = false;
    for (int i = 2; i + 1 <= d; ++i) {
        double den = th[i - 1] - th[i];
        if (std::fabs(den) <= tol * scale) return rc;
        double q = (th[i - 2] - th[i + 1]) / den;
        if (!have) {
            rc.beta = q - 1.0;
            have = true;
        } else if (std::fabs(q - 1.0 - rc.beta) > tol * std::max(1.0, std::fabs(rc.beta)))
            return rc;
    }
    rc.recurrent = true;
    rc.beta_recurrent = true;

    rc.gamma = th[0] - rc.beta * th[1] + th[2];
    double dev_g = 0;
    for (int i = 1; i + 1 <= d; ++i)
        dev_g = std::max(dev_g,
                         std::fabs(th[i - 1] - rc.beta * th[i] + th[i + 1] - rc.gamma));
    rc.beta_gamma = dev_g <= tol * std::max(1.0, (1.0 + std::fabs(rc.beta)) * scale);
    if (!rc.beta_gamma) return rc;

    auto rho_at = [&](int i) {
        return th[i - 1] * th[i - 1] - rc.beta * th[i - 1] * th[i] + th[i] * th[i] -
               rc.gamma * (th[i - 1] + th[i]);
    };
    rc.rho = rho_at(1);
    double dev_r = 0;
    for (int i = 2; i <= d; ++i) dev_r = std::max(dev_r, std::fabs(rho_at(i) - rc.rho));
    double scale_r =
        std::max(1.0, (2.0 + std::fabs(rc.beta)) * scale * scale +
                          2.0 * std::fabs(rc.gamma) * scale);
    rc.beta_gamma_rho = dev_r <= tol * scale_r;
    if (!rc.beta_gamma_rho) return rc;

    double tm1 = rc.gamma + rc.beta * th[0] - th[1];
    double tp1 = rc.gamma + rc.beta * th[d] - th[d - 1];
    for (int i = 0; i <= d; ++i) {
        double lo = i == 0 ? tm1 : th[i - 1];
        double hi = i == d ? tp1 : th[i + 1];
        double lhs = (2.0 - rc.beta) * th[i] * th[i] - 2.0 * rc.gamma * th[i] - rc.rho;
        double rhs = (th[i] - lo) * (th[i] - hi);
        rc.quad_identity_residual =
            std::max(rc.quad_identity_residual, std::fabs(lhs - rhs));
    }
    return rc;
}

TDParams td_parameters(const std::vector<double>& theta,
                       const std::vector<double>& theta_star, double tol) {
    auto rc = recurrence_classify(theta, tol);
    auto rs = recurrence_classify(theta_star, tol);
    if (!rc.beta_gamma_rho)
        throw std::domain_error("eigenvalue sequence does not satisfy the three-term scalar recurrence");
    if (!rs.beta_gamma_rho)
        throw std::domain_error("dual eigenvalue sequence does not satisfy the three-term scalar recurrence");

    TDParams td;
    td.beta_gap = std::fabs(rc.beta - rs.beta);
    if (td.beta_gap > tol * std::max(1.0, std::fabs(rc.beta)))
        throw std::domain_error("the two eigenvalue sequences disagree on beta");

    td.beta = rc.beta;
    td.gamma = rc.gamma;
    td.rho = rc.rho;
    td.gamma_star = rs.gamma;
    td.rho_star = rs.rho;
    td.max_residual = std::max(rc.quad_identity_residual, rs.quad_identity_residual);

    const int d = static_cast<int>(theta.size()) - 1;
    td.theta_m1 = td.gamma + td.beta * theta[0] - theta[1];
    td.theta_dp1 = td.gamma + td.beta * theta[d] - theta[d - 1];
    td.theta_star_m1 = td.gamma_star + td.beta * theta_star[0] - theta_star[1];
    td.theta_star_dp1 = td.gamma_star + td.beta * theta_star[d] - theta_star[d - 1];
    return td;
}

AWParams aw_parameters(const std::vector<double>& a,
                       const std::vector<double>& a_star,
                       const std::vector<double>& theta,
                       const std::vector<double>& theta_star, const TDParams& td,
                       double tol) {
    const int d = static_cast<int>(theta.size()) - 1;
    if (a.size() != theta.size() || a_star.size() != theta.size() ||
        theta_star.size() != theta.size())
        throw std::invalid_argument("sequence lengths disagree");

    auto at = [&](const std::vector<double>& v, int i, double m1, double p1) {
        if (i < 0) return m1;
        if (i > d) return p1;
        return v[i];
    };
    auto lhs_primal = [&](int i) {
        double lo = at(theta_star, i - 1, td.theta_star_m1, td.theta_star_dp1);
        double hi = at(theta_star, i + 1, td.theta_star_m1, td.theta_star_dp1);
        return a[i] * (theta_star[i] - lo) * (theta_star[i] - hi);
    };
    auto lhs_dual = [&](int i) {
        double lo = at(theta, i - 1, td.theta_m1, td.theta_dp1);
        double hi = at(theta, i + 1, td.theta_m1, td.theta_dp1);
        return a_star[i] * (theta[i] - lo) * (theta[i] - hi);
    };

    AWParams aw;
    double l0 = lhs_primal(0), l1 = lhs_primal(1);
    aw.omega = (l1 - l0 -
                td.gamma * (theta_star[1] * theta_star[1] -
                            theta_star[0] * theta_star[0])) /
               (theta_star[1] - theta_star[0]);
    aw.eta_star = l0 - td.gamma * theta_star[0] * theta_star[0] - aw.omega * theta_star[0];
    aw.eta = lhs_dual(0) - td.gamma_star * theta[0] * theta[0] - aw.omega * theta[0];

    for (int i = 0; i <= d; ++i) {
        double wantp = td.gamma * theta_star[i] * theta_star[i] +
                       aw.omega * theta_star[i] + aw.eta_star;
        double gotp = lhs_primal(i);
        double scp = std::max(1.0, std::fabs(wantp) + std::fabs(gotp));
        aw.max_residual = std::max(aw.max_residual, std::fabs(gotp - wantp) / scp);

        double wantd = td.gamma_star * theta[i] * theta[i] + aw.omega * theta[i] + aw.eta;
        double gotd = lhs_dual(i);
        double scd = std::max(1.0, std::fabs(wantd) + std::fabs(gotd));
        aw.max_residual = std::max(aw.max_residual, std::fabs(gotd - wantd) / scd);
    }
    if (aw.max_residual > tol)
        throw std::domain_error("scalar relations disagree across the sequence");
    return aw;
}

namespace {

// [i] = 1 + b + ... + b^{i-1}
Rational gauss_bracket(long b, int i) {
    Rational s = 0, p = 1;
    for (int t = 0; t < i; ++t) {
        s += p;
        p *= b;
    }
    return s;
}

Rational pow_rational(long b, int e) {
    Rational p = 1;
    Rational base(b);
    if (e >= 0)
        for (int t = 0; t < e; ++t) p *= base;
    else
        for (int t = 0; t < -e; ++t) p /= base;
    return p;
}

} // namespace

std::vector<ClassicalParams> classical_parameters(const IntersectionArray& ia) {
    const int d = ia.d;
    const Rational c2 = ia.c[2], c3 = ia.c[3];
    // explicit return type: the deduced one would be a gmp expression template
    // referring to locals
    auto poly = [&](long b) -> Rational {
        Rational rb(b);
        return (Rational(1) + rb + rb * rb) * (c2 - rb) - c3;
    };

    // integer roots of a cubic with lead coefficient -1: scan the Cauchy bound
    double bound = 2.0 + std::max(std::fabs(Rational(c2 - 1).get_d()),
                                  std::fabs(Rational(c2 - c3).get_d()));
    long limit = bound > 1e6 ? 1000000 : static_cast<long>(bound);

    std::vector<ClassicalParams> found;
    for (long b = -limit; b <= limit; ++b) {
        if (b == 0 || b == -1) continue;
        if (poly(b) != 0) continue;

        Rational gd = gauss_bracket(b, d);
        if (gd == 0) continue;
        ClassicalParams cp;
        cp.d = d;
        cp.b = b;
        cp.alpha = c2 / (Rational(1) + b) - 1;
        cp.sigma = ia.b[0] / gd;

        // keep the candidate only if the whole array reproduces exactly
        bool ok = true;
        for (int i = 1; i <= d && ok; ++i) {
            Rational ci = gauss_bracket(b, i) * (1 + cp.alpha * gauss_bracket(b, i - 1));
            if (ci != ia.c[i]) ok = false;
        }
        for (int i = 0; i < d && ok; ++i) {
            Rational bi = (gd - gauss_bracket(b, i)) * (cp.sigma - cp.alpha * gauss_bracket(b, i));
            if (bi != ia.b[i]) ok = false;
        }
        if (ok) found.push_back(cp);
    }
    return found;
}

ClassicalQPoly classical_qpoly(const IntersectionArray& ia, const SpectralData& sp,
                               const ClassicalParams& cp, double tol) {
    const int d = ia.d;
    Rational gd = gauss_bracket(cp.b, d);
    Rational b1 = (gd - 1) * (cp.sigma - cp.alpha);
    Rational theta_exact = b1 / cp.b - 1;
    Rational k = ia.b[0];
    if (theta_exact == k)
        throw std::domain_error("predicted eigenvalue equals the valency");

    ClassicalQPoly cq;
    cq.theta = theta_exact.get_d();

    const double scale = std::max(1.0, sp.theta[0]);
    for (int j = 0; j <= d; ++j)
        if (std::fabs(sp.theta[j] - cq.theta) <= tol * scale) {
            cq.theta_index = j;
            break;
        }
    if (cq.theta_index < 0)
        throw std::domain_error("predicted eigenvalue is not in the spectrum");

    // dual sequence proportional to 1 + (theta/k - 1)[i] b^{1-i}, scaled by
    // the multiplicity of theta so that theta*_0 matches the usual convention
    double m = sp.mult[cq.theta_index];
    Rational qfac = theta_exact / k - 1;
    cq.theta_star.resize(d + 1);
    for (int i = 0; i <= d; ++i) {
        Rational t = 1 + qfac * gauss_bracket(cp.b, i) * pow_rational(cp.b, 1 - i);
        cq.theta_star[i] = m * t.get_d();
    }

    cq.pascasio = pascasio_check(ia, cq.theta_star, tol);

    // predicted eigenvalue order theta_i = b_i / b^i - [i]
    cq.order.assign(d + 1, -1);
    std::vector<bool> taken(d + 1, false);
    for (int i = 0; i <= d; ++i) {
        Rational bi = (gd - gauss_bracket(cp.b, i)) *
                      (cp.sigma - cp.alpha * gauss_bracket(cp.b, i));
        double ti =
            Rational(bi * pow_rational(cp.b, -i) - gauss_bracket(cp.b, i)).get_d();
        int best = -1;
        double gap = std::numeric_limits<double>::infinity();
        for (int j = 0; j <= d; ++j) {
            double g = std::fabs(ti - sp.theta[j]);
            if (g < gap) {
                gap = g;
                best = j;
            }
        }
        cq.order_residual = std::max(cq.order_residual, gap);
        if (!taken[best]) {
            taken[best] = true;
            cq.order[i] = best;
        }
    }
    return cq;
}

} // namespace drg
