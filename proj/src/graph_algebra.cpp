#include "drg/graph_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace drg {

namespace {

// running maxima of the scaled Frobenius defect and the raw entry defect
struct Resid {
    double fro = 0.0;
    double mab = 0.0;

    void take(const Matrix& lhs, const Matrix& rhs) {
        Matrix diff = lhs - rhs;
        double scale = std::max({1.0, frobenius_norm(lhs), frobenius_norm(rhs)});
        fro = std::max(fro, frobenius_norm(diff) / scale);
        mab = std::max(mab, max_abs_entry(diff));
    }
    void take(double got, double want) {
        double err = std::fabs(got - want);
        fro = std::max(fro, err / std::max(1.0, std::fabs(want)));
        mab = std::max(mab, err);
    }
};

std::vector<double> column(const Matrix& m, int j) {
    std::vector<double> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    return v;
}

std::vector<std::vector<double>> eigenspace_basis(const Matrix& e, double tol) {
    std::vector<std::vector<double>> cols;
    cols.reserve(e.cols());
    for (std::size_t y = 0; y < e.cols(); ++y) cols.push_back(column(e, static_cast<int>(y)));
    std::vector<std::vector<double>> basis;
    grow_orthonormal_basis(basis, cols, tol);
    return basis;
}

// distance lookup recovered from the exact 0/1 distance matrices
std::vector<std::vector<int>> distances(const GraphAlgebra& alg) {
    int n = static_cast<int>(alg.A[0].rows());
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, 0));
    for (int i = 0; i <= alg.array.d; ++i)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (alg.A[i](y, z) == 1.0) dist[y][z] = i;
    return dist;
}

} // namespace

GraphAlgebra bose_mesner(const Graph& g, const IntersectionArray& ia, double tol) {
    if (!g.connected) throw std::invalid_argument("graph is not connected");
    if (g.diameter != ia.d)
        throw std::invalid_argument("graph diameter does not match the array");
    if (Rational(g.n) != ia.n)
        throw std::invalid_argument("vertex count does not match the array");

    GraphAlgebra alg;
    alg.array = ia;
    alg.sp = spectral_data(ia, tol);
    int d = ia.d;
    int n = g.n;

    alg.A.assign(d + 1, Matrix(n, n));
    for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) alg.A[g.dist[y][z]](y, z) = 1.0;

    alg.E.assign(d + 1, Matrix(n, n));
    for (int j = 0; j <= d; ++j) {
        for (int i = 0; i <= d; ++i) {
            double coeff = alg.sp.mult[j] / alg.sp.n * alg.sp.u(i, j);
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) alg.E[j](y, z) += coeff * alg.A[i](y, z);
        }
    }

    // defining identities: resolution of the identity, eigenmatrix action,
    // pairwise orthogonal idempotents, traces
    Resid r;
    Matrix sum(n, n);
    for (int j = 0; j <= d; ++j) sum += alg.E[j];
    r.take(sum, Matrix::identity(n));
    for (int j = 0; j <= d; ++j) {
        r.take(matmul(alg.A[1], alg.E[j]), alg.sp.theta[j] * alg.E[j]);
        for (int l = j; l <= d; ++l) {
            Matrix prod = matmul(alg.E[j], alg.E[l]);
            r.take(prod, l == j ? alg.E[j] : Matrix(n, n));
        }
        double tr = 0.0;
        for (int y = 0; y < n; ++y) tr += alg.E[j](y, y);
        r.take(tr, alg.sp.mult[j]);
    }
    alg.build_residual = r.fro;
    return alg;
}

Subconstituent subconstituent(const GraphAlgebra& alg, int base) {
    int d = alg.array.d;
    int n = static_cast<int>(alg.A[0].rows());
    if (base < 0 || base >= n) throw std::out_of_range("base vertex out of range");

    Subconstituent sub;
    sub.base = base;
    sub.Estar.assign(d + 1, Matrix(n, n));
    for (int i = 0; i <= d; ++i)
        for (int y = 0; y < n; ++y) sub.Estar[i](y, y) = alg.A[i](base, y);

    sub.Astar.assign(d + 1, Matrix(n, n));
    for (int j = 0; j <= d; ++j)
        for (int y = 0; y < n; ++y) sub.Astar[j](y, y) = alg.sp.n * alg.E[j](base, y);

    // central idempotent along both defining routes; the gap is a check
    Matrix shells(n, n), eigens(n, n);
    for (int i = 0; i <= d; ++i) {
        Matrix t = matmul(matmul(sub.Estar[i], alg.E[0]), sub.Estar[i]);
        shells += (alg.sp.n / alg.sp.shell[i]) * t;
    }
    for (int j = 0; j <= d; ++j) {
        Matrix t = matmul(matmul(alg.E[j], sub.Estar[0]), alg.E[j]);
        eigens += (alg.sp.n / alg.sp.mult[j]) * t;
    }
    sub.e0 = shells;
    sub.e0_route_gap = max_abs_entry(shells - eigens);
    return sub;
}

IdentityReport verify_identities(const GraphAlgebra& alg, const Subconstituent& sub,
                                 const KreinTable& kr, double tol) {
    int d = alg.array.d;
    int n = static_cast<int>(alg.A[0].rows());
    if (kr.d != d) throw std::invalid_argument("krein table diameter mismatch");
    for (int i = 0; i <= d; ++i)
        if (kr.order[i] != i)
            throw std::invalid_argument("krein table must use the natural order");

    const auto& A = alg.A;
    const auto& E = alg.E;
    const auto& Es = sub.Estar;
    const auto& As = sub.Astar;
    const Matrix& U = alg.sp.u;
    const std::vector<double>& kd = alg.sp.shell;
    const std::vector<double>& md = alg.sp.mult;
    double nv = alg.sp.n;
    IntersectionNumbers ip = intersection_numbers(alg.array);
    auto pd = [&](int h, int i, int j) { return ip(h, i, j).get_d(); };

    IdentityReport rep;
    auto record = [&](const std::string& name, const Resid& r) {
        IdentityCheck c;
        c.name = name;
        c.frobenius = r.fro;
        c.max_abs = r.mab;
        c.pass = r.fro <= tol;
        rep.worst = std::max(rep.worst, c.frobenius);
        rep.all_pass = rep.all_pass && c.pass;
        rep.checks.push_back(std::move(c));
    };

    // products with E_0 or E*_0 pinned on the left
    std::vector<Matrix> E0As(d + 1), E0Es(d + 1), Es0A(d + 1), Es0E(d + 1);
    // and on the right (transposed rules)
    std::vector<Matrix> AsE0(d + 1), EsE0(d + 1), AEs0(d + 1), EEs0(d + 1);
    for (int i = 0; i <= d; ++i) {
        E0As[i] = matmul(E[0], As[i]);
        E0Es[i] = matmul(E[0], Es[i]);
        Es0A[i] = matmul(Es[0], A[i]);
        Es0E[i] = matmul(Es[0], E[i]);
        AsE0[i] = matmul(As[i], E[0]);
        EsE0[i] = matmul(Es[i], E[0]);
        AEs0[i] = matmul(A[i], Es[0]);
        EEs0[i] = matmul(E[i], Es[0]);
    }
    Matrix zero(n, n);

    Resid r1a, r1b, r1c, r1d;
    Resid r2a, r2b, r2c, r2d;
    Resid r3a, r3b, r3c, r3d;
    Resid r4a, r4b, r4c, r4d;
    for (int i = 0; i <= d; ++i) {
        for (int j = 0; j <= d; ++j) {
            r1a.take(matmul(E0As[i], E[j]), i == j ? E0As[i] : zero);
            r1b.take(matmul(E0Es[i], E[j]), (kd[i] * U(i, j) / nv) * E0As[j]);
            r1c.take(matmul(E0As[i], A[j]), (kd[j] * U(j, i)) * E0As[i]);
            Matrix want1(n, n), want2(n, n), want3(n, n), want4(n, n);
            for (int h = 0; h <= d; ++h) {
                want1 += pd(h, i, j) * E0Es[h];
                want2 += kr(h, i, j) * Es0E[h];
                want3 += pd(h, i, j) * EsE0[h];
                want4 += kr(h, i, j) * EEs0[h];
            }
            r1d.take(matmul(E0Es[i], A[j]), want1);

            r2a.take(matmul(Es0A[i], Es[j]), i == j ? Es0A[i] : zero);
            r2b.take(matmul(Es0E[i], Es[j]), (md[i] * U(j, i) / nv) * Es0A[j]);
            r2c.take(matmul(Es0A[i], As[j]), (md[j] * U(i, j)) * Es0A[i]);
            r2d.take(matmul(Es0E[i], As[j]), want2);

            r3a.take(matmul(E[j], AsE0[i]), i == j ? AsE0[i] : zero);
            r3b.take(matmul(E[j], EsE0[i]), (kd[i] * U(i, j) / nv) * AsE0[j]);
            r3c.take(matmul(A[j], AsE0[i]), (kd[j] * U(j, i)) * AsE0[i]);
            r3d.take(matmul(A[j], EsE0[i]), want3);

            r4a.take(matmul(Es[j], AEs0[i]), i == j ? AEs0[i] : zero);
            r4b.take(matmul(Es[j], EEs0[i]), (md[i] * U(j, i) / nv) * AEs0[j]);
            r4c.take(matmul(As[j], AEs0[i]), (md[j] * U(i, j)) * AEs0[i]);
            r4d.take(matmul(As[j], EEs0[i]), want4);
        }
    }
    record("E0 A*i Ej = delta_ij E0 A*i", r1a);
    record("E0 E*i Ej = ki ui(th_j)/n E0 A*j", r1b);
    record("E0 A*i Aj = kj uj(th_i) E0 A*i", r1c);
    record("E0 E*i Aj = sum_h p(h,i,j) E0 E*h", r1d);
    record("E*0 Ai E*j = delta_ij E*0 Ai", r2a);
    record("E*0 Ei E*j = mi uj(th_i)/n E*0 Aj", r2b);
    record("E*0 Ai A*j = mj ui(th_j) E*0 Ai", r2c);
    record("E*0 Ei A*j = sum_h q(h,i,j) E*0 Eh", r2d);
    record("Ej A*i E0 = delta_ij A*i E0", r3a);
    record("Ej E*i E0 = ki ui(th_j)/n A*j E0", r3b);
    record("Aj A*i E0 = kj uj(th_i) A*i E0", r3c);
    record("Aj E*i E0 = sum_h p(h,i,j) E*h E0", r3d);
    record("E*j Ai E*0 = delta_ij Ai E*0", r4a);
    record("E*j Ei E*0 = mi uj(th_i)/n Aj E*0", r4b);
    record("A*j Ai E*0 = mj ui(th_j) Ai E*0", r4c);
    record("A*j Ei E*0 = sum_h q(h,i,j) Eh E*0", r4d);

    // sandwiches with both outer factors fixed
    Resid r5a, r5b;
    for (int i = 0; i <= d; ++i) {
        r5a.take(matmul(E0Es[i], E[0]), (kd[i] / nv) * E[0]);
        r5b.take(matmul(Es0E[i], Es[0]), (md[i] / nv) * Es[0]);
    }
    record("E0 E*i E0 = ki/n E0", r5a);
    record("E*0 Ei E*0 = mi/n E*0", r5b);

    Resid s1, s2, s3, s4;
    for (int i = 0; i <= d; ++i) {
        for (int j = 0; j <= d; ++j) {
            s1.take(matmul(AEs0[i], A[j]), nv * matmul(EsE0[i], Es[j]));
            s2.take(matmul(EEs0[i], A[j]), matmul(AsE0[i], Es[j]));
            s3.take(matmul(AEs0[i], E[j]), matmul(EsE0[i], As[j]));
            s4.take(matmul(EEs0[i], E[j]), (1.0 / nv) * matmul(AsE0[i], As[j]));
        }
    }
    record("Ai E*0 Aj = n E*i E0 E*j", s1);
    record("Ei E*0 Aj = A*i E0 E*j", s2);
    record("Ai E*0 Ej = E*i E0 A*j", s3);
    record("Ei E*0 Ej = A*i E0 A*j / n", s4);

    // e0: route agreement, idempotency, centrality, action on the two units
    Resid e0routes, e0idem, e0cent, e0fix, e0fixs;
    {
        Matrix shells(n, n), eigens(n, n);
        for (int i = 0; i <= d; ++i) shells += (nv / kd[i]) * matmul(EsE0[i], Es[i]);
        for (int j = 0; j <= d; ++j) eigens += (nv / md[j]) * matmul(EEs0[j], E[j]);
        e0routes.take(shells, eigens);
        e0idem.take(matmul(sub.e0, sub.e0), sub.e0);
        e0cent.take(matmul(sub.e0, A[1]), matmul(A[1], sub.e0));
        for (int i = 0; i <= d; ++i)
            e0cent.take(matmul(sub.e0, Es[i]), matmul(Es[i], sub.e0));
        e0fix.take(matmul(E[0], sub.e0), E[0]);
        e0fixs.take(matmul(Es[0], sub.e0), Es[0]);
    }
    record("e0 routes agree", e0routes);
    record("e0 idempotent", e0idem);
    record("e0 central in T", e0cent);
    record("E0 e0 = E0", e0fix);
    record("E*0 e0 = E*0", e0fixs);

    // triple products: vanishing pattern and squared norms
    Resid patp, patq, nrmp, nrmq;
    for (int h = 0; h <= d; ++h) {
        for (int i = 0; i <= d; ++i) {
            Matrix left = matmul(Es[h], A[i]);
            Matrix lefts = matmul(E[h], As[i]);
            for (int j = 0; j <= d; ++j) {
                double f = frobenius_norm(matmul(left, Es[j]));
                double fs = frobenius_norm(matmul(lefts, E[j]));
                double p = pd(h, i, j);
                double q = kr(h, i, j);
                nrmp.take(f * f, kd[h] * p);
                nrmq.take(fs * fs, md[h] * q);
                if (p == 0.0)
                    patp.take(f * f / std::max(1.0, kd[h]), 0.0);
                else if (f * f <= 0.5 * kd[h] * p)
                    patp.take(1.0, 0.0);
                if (kr.is_zero(h, i, j))
                    patq.take(fs * fs / std::max(1.0, md[h]), 0.0);
                else if (fs * fs <= 0.5 * md[h] * std::fabs(q))
                    patq.take(1.0, 0.0);
            }
        }
    }
    record("E*h Ai E*j vanishes iff p(h,i,j) = 0", patp);
    record("Eh A*i Ej vanishes iff q(h,i,j) = 0", patq);
    record("norm^2 of E*h Ai E*j = kh p(h,i,j)", nrmp);
    record("norm^2 of Eh A*i Ej = mh q(h,i,j)", nrmq);

    return rep;
}

std::vector<int> hadamard_span_check(const GraphAlgebra& alg, int i, int j,
                                     double tol) {
    int d = alg.array.d;
    int n = static_cast<int>(alg.A[0].rows());
    if (i < 0 || i > d || j < 0 || j > d)
        throw std::out_of_range("idempotent index out of range");

    std::vector<std::vector<double>> vecs;
    vecs.reserve(static_cast<std::size_t>(n) * n);
    for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
            std::vector<double> v(n);
            for (int w = 0; w < n; ++w) v[w] = alg.E[i](w, y) * alg.E[j](w, z);
            vecs.push_back(std::move(v));
        }
    std::vector<std::vector<double>> basis;
    grow_orthonormal_basis(basis, vecs, tol);

    double gate = std::sqrt(tol);
    std::vector<int> hit;
    for (int h = 0; h <= d; ++h) {
        double best = 0.0;
        for (const auto& b : basis) {
            std::vector<double> pb = matvec(alg.E[h], b);
            best = std::max(best, std::sqrt(dot(pb, pb)));
        }
        if (best > gate) hit.push_back(h);
    }
    return hit;
}

FiltrationResult filtration_qpoly_check(const GraphAlgebra& alg,
                                        const std::vector<int>& order,
                                        double tol) {
    int d = alg.array.d;
    int n = static_cast<int>(alg.A[0].rows());
    if (static_cast<int>(order.size()) != d + 1)
        throw std::invalid_argument("ordering has the wrong length");
    if (order[0] != 0) throw std::invalid_argument("ordering must start at 0");
    std::vector<bool> seen(d + 1, false);
    for (int t : order) {
        if (t < 0 || t > d || seen[t])
            throw std::invalid_argument("ordering is not a permutation");
        seen[t] = true;
    }

    FiltrationResult res;
    std::vector<std::vector<std::vector<double>>> eb(d + 1);
    for (int t = 0; t <= d; ++t) eb[t] = eigenspace_basis(alg.E[order[t]], tol);
    const auto& e1 = eb[1];

    // nondegeneracy: the columns of E_1 pairwise distinct
    const Matrix& E1 = alg.E[order[1]];
    double sep = std::numeric_limits<double>::infinity();
    for (int y = 0; y < n; ++y)
        for (int z = y + 1; z < n; ++z) {
            double s = 0.0;
            for (int w = 0; w < n; ++w) {
                double t = E1(w, y) - E1(w, z);
                s += t * t;
            }
            sep = std::min(sep, std::sqrt(s));
        }
    res.nondegenerate = sep > std::sqrt(tol);

    // level-by-level: the span of products of up to i factors from E_1 V
    // against the partial sum of eigenspaces
    std::vector<double> ones(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<std::vector<double>> power{ones};
    std::vector<std::vector<double>> accum{ones};
    std::vector<std::vector<double>> target;
    grow_orthonormal_basis(target, eb[0], tol);

    double gate = 100.0 * std::max(tol, 1e-12);
    bool levels_ok = true;
    for (int lev = 1; lev <= d; ++lev) {
        std::vector<std::vector<double>> raw;
        raw.reserve(power.size() * e1.size());
        for (const auto& p : power)
            for (const auto& e : e1) {
                std::vector<double> v(n);
                for (int w = 0; w < n; ++w) v[w] = p[w] * e[w];
                raw.push_back(std::move(v));
            }
        std::vector<std::vector<double>> next;
        grow_orthonormal_basis(next, raw, tol);
        power = std::move(next);
        grow_orthonormal_basis(accum, power, tol);
        grow_orthonormal_basis(target, eb[lev], tol);
        double gap = subspace_gap(accum, target);
        res.worst_gap = std::max(res.worst_gap, gap);
        if (accum.size() != target.size() || gap > gate) {
            levels_ok = false;
            if (res.first_bad_level < 0) res.first_bad_level = lev;
        }
    }
    res.qpoly = levels_ok && res.nondegenerate;

    // three-term containment under the candidate order
    for (int t = 0; t <= d; ++t) {
        std::vector<const std::vector<std::vector<double>>*> allowed;
        if (t > 0) allowed.push_back(&eb[t - 1]);
        allowed.push_back(&eb[t]);
        if (t < d) allowed.push_back(&eb[t + 1]);
        for (const auto& e : e1)
            for (const auto& f : eb[t]) {
                std::vector<double> w(n);
                for (int y = 0; y < n; ++y) w[y] = e[y] * f[y];
                double wn = std::sqrt(dot(w, w));
                if (wn < 1e-14) continue;
                for (const auto* grp : allowed)
                    for (const auto& b : *grp) {
                        double c = dot(b, w);
                        for (int y = 0; y < n; ++y) w[y] -= c * b[y];
                    }
                double left = std::sqrt(dot(w, w)) / std::max(1.0, wn);
                res.containment_residual = std::max(res.containment_residual, left);
            }
    }
    return res;
}

std::vector<double> norton_product(const GraphAlgebra& alg, int j,
                                   const std::vector<double>& u,
                                   const std::vector<double>& v) {
    int d = alg.array.d;
    std::size_t n = alg.A[0].rows();
    if (j < 0 || j > d) throw std::out_of_range("idempotent index out of range");
    if (u.size() != n || v.size() != n)
        throw std::invalid_argument("vector length does not match the graph");
    std::vector<double> w(n);
    for (std::size_t y = 0; y < n; ++y) w[y] = u[y] * v[y];
    return matvec(alg.E[j], w);
}

BalancedSetResult balanced_set_check(const GraphAlgebra& alg, int e_index,
                                     double tol) {
    int d = alg.array.d;
    int n = static_cast<int>(alg.A[0].rows());
    if (e_index < 0 || e_index > d)
        throw std::out_of_range("idempotent index out of range");

    BalancedSetResult res;
    // dual eigenvalue sequence of the chosen idempotent
    std::vector<double> ts(d + 1);
    for (int t = 0; t <= d; ++t) ts[t] = alg.sp.mult[e_index] * alg.sp.u(t, e_index);
    for (int t = 1; t <= d; ++t)
        if (std::fabs(ts[t] - ts[0]) <= tol * std::max(1.0, std::fabs(ts[0])))
            return res;   // degenerate: not applicable
    res.applicable = true;

    const Matrix& E = alg.E[e_index];
    auto dist = distances(alg);
    IntersectionNumbers ip = intersection_numbers(alg.array);

    std::vector<double> lhs(n), diff(n);
    for (int y = 0; y < n; ++y) {
        for (int z = y + 1; z < n; ++z) {
            int h = dist[y][z];
            for (int w = 0; w < n; ++w) diff[w] = E(w, y) - E(w, z);
            double g2 = dot(diff, diff);
            for (int i = 0; i <= d; ++i) {
                for (int j = i + 1; j <= d; ++j) {
                    std::fill(lhs.begin(), lhs.end(), 0.0);
                    for (int w = 0; w < n; ++w) {
                        int dy = dist[y][w], dz = dist[z][w];
                        if (dy == i && dz == j)
                            for (int t = 0; t < n; ++t) lhs[t] += E(t, w);
                        else if (dy == j && dz == i)
                            for (int t = 0; t < n; ++t) lhs[t] -= E(t, w);
                    }
                    double coeff =
                        ip(h, i, j).get_d() * (ts[i] - ts[j]) / (ts[0] - ts[h]);
                    double worst = 0.0;
                    for (int t = 0; t < n; ++t)
                        worst = std::max(worst, std::fabs(lhs[t] - coeff * diff[t]));
                    res.max_residual = std::max(res.max_residual, worst);
                    if (i == 1 && j == 2) {
                        // span form: component of the sum off the line through
                        // E yhat - E zhat
                        double c = dot(lhs, diff) / g2;
                        double off = 0.0;
                        for (int t = 0; t < n; ++t) {
                            double r = lhs[t] - c * diff[t];
                            off += r * r;
                        }
                        res.span_residual =
                            std::max(res.span_residual, std::sqrt(off));
                    }
                }
            }
        }
    }
    res.balanced = res.max_residual <= tol && res.span_residual <= tol;
    return res;
}

} // namespace drg
