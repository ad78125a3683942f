#include "drg/tmodules.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace drg {
namespace {

constexpr int kMaxDecomposeVertices = 100;

// deterministic across platforms: raw bits, not std::normal_distribution
double unit_from(std::mt19937_64& rng) {
    return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

std::vector<double> residual_off_span(const std::vector<std::vector<double>>& basis,
                                      std::vector<double> v) {
    for (const auto& b : basis) {
        double c = dot(b, v);
        for (std::size_t t = 0; t < v.size(); ++t) v[t] -= c * b[t];
    }
    return v;
}

// restriction of a symmetric operator to the span of orthonormal rows
Matrix restrict_op(const Matrix& op, const std::vector<std::vector<double>>& w) {
    std::size_t m = w.size();
    Matrix r(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> col = matvec(op, w[j]);
        for (std::size_t i = 0; i < m; ++i) r(i, j) = dot(w[i], col);
    }
    // symmetrize away projection noise
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            double v = 0.5 * (r(i, j) + r(j, i));
            r(i, j) = r(j, i) = v;
        }
    return r;
}

// basis of the symmetric matrices commuting with every operator in `ops`,
// found as the null space of the stacked commutator map
std::vector<Matrix> symmetric_commutant(const std::vector<const Matrix*>& ops,
                                        std::size_t m) {
    std::vector<std::pair<int, int>> unknowns;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b)
            unknowns.emplace_back(static_cast<int>(a), static_cast<int>(b));
    std::size_t u = unknowns.size();

    std::vector<std::vector<Matrix>> comms(u);
    for (std::size_t k = 0; k < u; ++k) {
        auto [a, b] = unknowns[k];
        Matrix s(m, m);
        s(a, b) = 1.0;
        s(b, a) = 1.0;
        for (const Matrix* op : ops) comms[k].push_back(commutator(s, *op));
    }
    Matrix gram(u, u);
    for (std::size_t k = 0; k < u; ++k)
        for (std::size_t l = k; l < u; ++l) {
            double s = 0.0;
            for (std::size_t t = 0; t < comms[k].size(); ++t)
                for (std::size_t i = 0; i < m; ++i) {
                    const double* rk = comms[k][t].row(i);
                    const double* rl = comms[l][t].row(i);
                    for (std::size_t j = 0; j < m; ++j) s += rk[j] * rl[j];
                }
            gram(k, l) = gram(l, k) = s;
        }

    std::vector<double> vals;
    Matrix vecs;
    symmetric_eigen(gram, vals, vecs);
    double cutoff = 1e-8 * std::max(1.0, vals.empty() ? 0.0 : vals.back());
    std::vector<Matrix> basis;
    for (std::size_t t = 0; t < vals.size(); ++t) {
        if (vals[t] > cutoff) continue;
        Matrix bmat(m, m);
        for (std::size_t k = 0; k < u; ++k) {
            auto [a, b] = unknowns[k];
            bmat(a, b) += vecs(k, t);
            bmat(b, a) = bmat(a, b);
        }
        basis.push_back(std::move(bmat));
    }
    return basis;
}

// eigenvalue groups of a symmetric matrix, split at spectral gaps
std::vector<std::vector<std::vector<double>>> eigen_split(const Matrix& s) {
    std::size_t m = s.rows();
    std::vector<double> vals;
    Matrix vecs;
    symmetric_eigen(s, vals, vecs);
    double spread = vals.empty() ? 0.0 : vals.back() - vals.front();
    double gap = 1e-6 * std::max(1.0, spread);

    std::vector<std::vector<std::vector<double>>> groups;
    std::size_t start = 0;
    for (std::size_t t = 1; t <= m; ++t) {
        if (t == m || vals[t] - vals[t - 1] > gap) {
            std::vector<std::vector<double>> g;
            for (std::size_t c = start; c < t; ++c) {
                std::vector<double> v(m);
                for (std::size_t i = 0; i < m; ++i) v[i] = vecs(i, c);
                g.push_back(std::move(v));
            }
            groups.push_back(std::move(g));
            start = t;
        }
    }
    return groups;
}

struct LadderReport {
    bool is_path = false;
    int length = -1;                  // number of rungs minus one
    double off_tridiagonal = 0.0;     // worst block norm beyond the path
    std::vector<std::vector<int>> rungs;   // eigenvector column groups in path order
};

// eigenspace ladder of `diag` flowed by `flow`: group the spectrum of diag,
// link groups with a nonvanishing flow block, and demand a path
LadderReport ladder(const Matrix& diag, const Matrix& flow) {
    std::size_t m = diag.rows();
    std::vector<double> vals;
    Matrix vecs;
    symmetric_eigen(diag, vals, vecs);
    double spread = vals.empty() ? 0.0 : vals.back() - vals.front();
    double gap = 1e-6 * std::max(1.0, spread);

    std::vector<std::vector<int>> groups;
    std::size_t start = 0;
    for (std::size_t t = 1; t <= m; ++t) {
        if (t == m || vals[t] - vals[t - 1] > gap) {
            std::vector<int> g;
            for (std::size_t c = start; c < t; ++c) g.push_back(static_cast<int>(c));
            groups.push_back(std::move(g));
            start = t;
        }
    }
    std::size_t ng = groups.size();

    // block norms of the flow in the eigenbasis
    Matrix f(m, m);
    {
        Matrix fv = matmul(flow, vecs);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                double s = 0.0;
                for (std::size_t t = 0; t < m; ++t) s += vecs(t, i) * fv(t, j);
                f(i, j) = s;
            }
    }
    Matrix block(ng, ng);
    for (std::size_t gi = 0; gi < ng; ++gi)
        for (std::size_t gj = 0; gj < ng; ++gj) {
            double s = 0.0;
            for (int i : groups[gi])
                for (int j : groups[gj]) s += f(i, j) * f(i, j);
            block(gi, gj) = std::sqrt(s);
        }
    double scale = std::max(1.0, frobenius_norm(flow));
    double edge_gate = 1e-6 * scale;

    LadderReport rep;
    if (ng == 1) {
        rep.is_path = true;
        rep.length = 0;
        rep.rungs = {groups[0]};
        return rep;
    }
    std::vector<std::vector<int>> nbr(ng);
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t j = 0; j < ng; ++j)
            if (i != j && block(i, j) > edge_gate) nbr[i].push_back(static_cast<int>(j));
    int end = -1;
    for (std::size_t i = 0; i < ng; ++i) {
        if (nbr[i].size() > 2) return rep;
        if (nbr[i].size() == 1 && end < 0) end = static_cast<int>(i);
        if (nbr[i].empty()) return rep;    // disconnected
    }
    if (end < 0) return rep;               // a cycle
    std::vector<int> path{end};
    int prev = -1, cur = end;
    while (true) {
        int next = -1;
        for (int cand : nbr[cur])
            if (cand != prev) next = cand;
        if (next < 0) break;
        path.push_back(next);
        prev = cur;
        cur = next;
    }
    if (path.size() != ng) return rep;     // not a single path
    std::vector<int> pos(ng);
    for (std::size_t t = 0; t < ng; ++t) pos[path[t]] = static_cast<int>(t);
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t j = 0; j < ng; ++j)
            if (std::abs(pos[i] - pos[j]) > 1)
                rep.off_tridiagonal = std::max(rep.off_tridiagonal, block(i, j) / scale);
    rep.is_path = true;
    rep.length = static_cast<int>(ng) - 1;
    for (int g : path) rep.rungs.push_back(groups[g]);
    return rep;
}

std::vector<int> projected_dims(const std::vector<std::vector<double>>& basis,
                                const std::vector<Matrix>& projs, double tol) {
    // basis rows are unit vectors, so the cut can be absolute; a relative gate
    // would promote pure roundoff images to rank one
    const double cut = std::max(std::sqrt(tol), 1e-10);
    std::vector<int> dims;
    dims.reserve(projs.size());
    for (const auto& p : projs) {
        std::vector<std::vector<double>> imgs;
        imgs.reserve(basis.size());
        for (const auto& w : basis) {
            auto img = matvec(p, w);
            if (norm2(img) > cut) imgs.push_back(std::move(img));
        }
        std::vector<std::vector<double>> span;
        grow_orthonormal_basis(span, imgs, std::max(tol, 1e-10));
        dims.push_back(static_cast<int>(span.size()));
    }
    return dims;
}

} // namespace

PrimaryModule primary_module(const GraphAlgebra& alg, const Subconstituent& sub,
                             double tol) {
    int d = alg.array.d;
    int n = static_cast<int>(alg.A[0].rows());
    double nv = alg.sp.n;
    PrimaryModule pm;

    pm.shell_basis.assign(d + 1, std::vector<double>(n));
    for (int i = 0; i <= d; ++i)
        for (int y = 0; y < n; ++y) pm.shell_basis[i][y] = alg.A[i](sub.base, y);
    pm.dual_basis.assign(d + 1, std::vector<double>(n));
    for (int j = 0; j <= d; ++j)
        for (int y = 0; y < n; ++y) pm.dual_basis[j][y] = nv * alg.E[j](sub.base, y);

    KreinTable kr = krein_parameters(alg.sp, tol);
    auto resid = [](const std::vector<double>& got, const std::vector<double>& want) {
        double err = 0.0, scale = 1.0;
        for (std::size_t t = 0; t < got.size(); ++t) {
            err = std::max(err, std::fabs(got[t] - want[t]));
            scale = std::max(scale, std::fabs(want[t]));
        }
        return err / scale;
    };

    // action tables: A is tridiagonal on shells and diagonal on duals,
    // the dual adjacency matrix the other way around
    const Matrix& adj = alg.A[1];
    const Matrix& astar = sub.Astar[1];
    for (int i = 0; i <= d; ++i) {
        std::vector<double> got = matvec(adj, pm.shell_basis[i]);
        std::vector<double> want(n, 0.0);
        if (i > 0) {
            double b = alg.array.b[i - 1].get_d();
            for (int y = 0; y < n; ++y) want[y] += b * pm.shell_basis[i - 1][y];
        }
        double a = alg.array.a[i].get_d();
        for (int y = 0; y < n; ++y) want[y] += a * pm.shell_basis[i][y];
        if (i < d) {
            double c = alg.array.c[i + 1].get_d();
            for (int y = 0; y < n; ++y) want[y] += c * pm.shell_basis[i + 1][y];
        }
        pm.action_residual = std::max(pm.action_residual, resid(got, want));

        double ts = alg.sp.mult[1] * alg.sp.u(i, 1);
        got = matvec(astar, pm.shell_basis[i]);
        for (int y = 0; y < n; ++y) want[y] = ts * pm.shell_basis[i][y];
        pm.action_residual = std::max(pm.action_residual, resid(got, want));
    }
    for (int j = 0; j <= d; ++j) {
        std::vector<double> got = matvec(adj, pm.dual_basis[j]);
        std::vector<double> want(n);
        for (int y = 0; y < n; ++y) want[y] = alg.sp.theta[j] * pm.dual_basis[j][y];
        pm.action_residual = std::max(pm.action_residual, resid(got, want));

        got = matvec(astar, pm.dual_basis[j]);
        std::fill(want.begin(), want.end(), 0.0);
        for (int h = 0; h <= d; ++h) {
            double q = kr(h, 1, j);
            for (int y = 0; y < n; ++y) want[y] += q * pm.dual_basis[h][y];
        }
        pm.action_residual = std::max(pm.action_residual, resid(got, want));
    }

    // Gram matrices: <1_i, 1_j> = delta k_i and <1*_i, 1*_j> = delta n m_i
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            double g1 = dot(pm.shell_basis[i], pm.shell_basis[j]);
            double w1 = i == j ? alg.sp.shell[i] : 0.0;
            pm.gram_residual = std::max(
                pm.gram_residual, std::fabs(g1 - w1) / std::max(1.0, std::fabs(w1)));
            double g2 = dot(pm.dual_basis[i], pm.dual_basis[j]);
            double w2 = i == j ? nv * alg.sp.mult[i] : 0.0;
            pm.gram_residual = std::max(
                pm.gram_residual, std::fabs(g2 - w2) / std::max(1.0, std::fabs(w2)));
        }

    // transition both ways through the cosine matrix
    for (int j = 0; j <= d; ++j) {
        std::vector<double> want(n, 0.0);
        for (int i = 0; i <= d; ++i) {
            double c = alg.sp.mult[j] * alg.sp.u(i, j);
            for (int y = 0; y < n; ++y) want[y] += c * pm.shell_basis[i][y];
        }
        pm.transition_residual =
            std::max(pm.transition_residual, resid(pm.dual_basis[j], want));
    }
    for (int i = 0; i <= d; ++i) {
        std::vector<double> want(n, 0.0);
        for (int j = 0; j <= d; ++j) {
            double c = alg.sp.shell[i] * alg.sp.u(i, j) / nv;
            for (int y = 0; y < n; ++y) want[y] += c * pm.dual_basis[j][y];
        }
        pm.transition_residual =
            std::max(pm.transition_residual, resid(pm.shell_basis[i], want));
    }
    pm.pass = pm.action_residual <= tol && pm.gram_residual <= tol &&
              pm.transition_residual <= tol;
    return pm;
}

TDPairReport verify_tridiagonal_pair(const GraphAlgebra& alg,
                                     const Subconstituent& sub,
                                     const QPolyStructure& qp,
                                     const std::vector<std::vector<double>>& basis,
                                     double tol) {
    TDPairReport rep;
    if (basis.empty()) return rep;
    const Matrix& adj = alg.A[1];
    const Matrix& astar = sub.Astar[qp.order[1]];
    double gate = std::max(100.0 * tol, 1e-12);

    for (const auto& w : basis)
        for (const Matrix* op : {&adj, &astar}) {
            std::vector<double> img = matvec(*op, w);
            double in = std::sqrt(dot(img, img));
            std::vector<double> rem = residual_off_span(basis, img);
            rep.invariance_residual = std::max(
                rep.invariance_residual, std::sqrt(dot(rem, rem)) / std::max(1.0, in));
        }
    if (rep.invariance_residual > gate) return rep;

    Matrix ra = restrict_op(adj, basis);
    Matrix rs = restrict_op(astar, basis);
    LadderReport lad = ladder(ra, rs);
    LadderReport dual = ladder(rs, ra);
    rep.flow_residual = std::max(lad.off_tridiagonal, dual.off_tridiagonal);
    rep.d = lad.length;
    rep.dual_d = dual.length;

    std::vector<const Matrix*> ops{&ra, &rs};
    rep.irreducible = symmetric_commutant(ops, basis.size()).size() == 1;

    rep.ok = lad.is_path && dual.is_path && rep.irreducible &&
             rep.d == rep.dual_d && rep.flow_residual <= gate;
    return rep;
}

Decomposition decompose(const GraphAlgebra& alg, const Subconstituent& sub,
                        const QPolyStructure& qp, std::uint64_t seed, double tol) {
    int d = alg.array.d;
    int n = static_cast<int>(alg.A[0].rows());
    if (n > kMaxDecomposeVertices)
        throw std::invalid_argument("module decomposition is limited to " +
                                    std::to_string(kMaxDecomposeVertices) +
                                    " vertices");
    const Matrix& adj = alg.A[1];
    const Matrix& astar = sub.Astar[qp.order[1]];

    Decomposition dec;
    dec.seed = seed;
    std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);

    // the commutant of {A, A*} sits inside the shell-block-diagonal matrices
    // because the dual eigenvalues are distinct; solve [S, A] = 0 over
    // symmetric shell-block unknowns
    std::vector<std::vector<int>> shells(d + 1);
    for (int y = 0; y < n; ++y)
        for (int i = 0; i <= d; ++i)
            if (alg.A[i](sub.base, y) == 1.0) shells[i].push_back(y);

    std::vector<std::pair<int, int>> unknowns;
    for (int i = 0; i <= d; ++i)
        for (std::size_t a = 0; a < shells[i].size(); ++a)
            for (std::size_t b = a; b < shells[i].size(); ++b)
                unknowns.emplace_back(shells[i][a], shells[i][b]);
    std::size_t u = unknowns.size();

    std::vector<Matrix> comm(u);
    for (std::size_t k = 0; k < u; ++k) {
        auto [ya, yb] = unknowns[k];
        Matrix c(n, n);
        for (int w = 0; w < n; ++w) {
            c(ya, w) += adj(yb, w);
            c(w, ya) -= adj(w, yb);
            if (ya != yb) {
                c(yb, w) += adj(ya, w);
                c(w, yb) -= adj(w, ya);
            }
        }
        comm[k] = std::move(c);
    }
    Matrix gram(u, u);
    for (std::size_t k = 0; k < u; ++k)
        for (std::size_t l = k; l < u; ++l) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                const double* rk = comm[k].row(i);
                const double* rl = comm[l].row(i);
                for (int j = 0; j < n; ++j) s += rk[j] * rl[j];
            }
            gram(k, l) = gram(l, k) = s;
        }
    std::vector<double> gvals;
    Matrix gvecs;
    symmetric_eigen(gram, gvals, gvecs);
    double cutoff = 1e-8 * std::max(1.0, gvals.empty() ? 0.0 : gvals.back());
    std::vector<std::vector<double>> nullvecs;
    for (std::size_t t = 0; t < gvals.size(); ++t)
        if (gvals[t] <= cutoff) {
            std::vector<double> v(u);
            for (std::size_t k = 0; k < u; ++k) v[k] = gvecs(k, t);
            nullvecs.push_back(std::move(v));
        }

    // a generic symmetric commutant element; its eigenspaces are the modules
    Matrix s(n, n);
    for (const auto& v : nullvecs) {
        double c = unit_from(rng);
        for (std::size_t k = 0; k < u; ++k) {
            auto [ya, yb] = unknowns[k];
            s(ya, yb) += c * v[k];
            if (ya != yb) s(yb, ya) += c * v[k];
        }
    }

    std::vector<std::vector<std::vector<double>>> pieces;
    std::function<void(std::vector<std::vector<double>>, int)> split =
        [&](std::vector<std::vector<double>> w, int depth) {
            if (depth > 8)
                throw std::runtime_error("failed to split an invariant subspace");
            Matrix ra = restrict_op(adj, w);
            Matrix rs = restrict_op(astar, w);
            std::vector<const Matrix*> ops{&ra, &rs};
            std::vector<Matrix> small = symmetric_commutant(ops, w.size());
            if (small.size() <= 1) {
                pieces.push_back(std::move(w));
                return;
            }
            Matrix gen(w.size(), w.size());
            for (const auto& b : small) {
                double c = unit_from(rng);
                gen += c * b;
            }
            auto groups = eigen_split(gen);
            if (groups.size() == 1) {
                split(std::move(w), depth + 1);   // retry with fresh coefficients
                return;
            }
            for (auto& grp : groups) {
                std::vector<std::vector<double>> lifted;
                for (const auto& coef : grp) {
                    std::vector<double> v(n, 0.0);
                    for (std::size_t t = 0; t < w.size(); ++t)
                        for (int y = 0; y < n; ++y) v[y] += coef[t] * w[t][y];
                    lifted.push_back(std::move(v));
                }
                split(std::move(lifted), depth + 1);
            }
        };

    for (auto& grp : eigen_split(s)) split(std::move(grp), 0);

    // invariants, verification, deterministic ordering
    std::vector<Matrix> eproj(d + 1), esproj(d + 1);
    for (int t = 0; t <= d; ++t) {
        eproj[t] = alg.E[qp.order[t]];
        Matrix es(n, n);
        for (int y : shells[t]) es(y, y) = 1.0;
        esproj[t] = std::move(es);
    }
    for (auto& w : pieces) {
        TModule m;
        m.shell_dims = projected_dims(w, esproj, tol);
        m.dual_shell_dims = projected_dims(w, eproj, tol);
        auto span_of = [](const std::vector<int>& dims) {
            int first = -1, last = -1;
            for (std::size_t i = 0; i < dims.size(); ++i)
                if (dims[i] > 0) {
                    if (first < 0) first = static_cast<int>(i);
                    last = static_cast<int>(i);
                }
            return std::pair<int, int>{first, last};
        };
        auto [f1, l1] = span_of(m.shell_dims);
        auto [f2, l2] = span_of(m.dual_shell_dims);
        m.endpoint = f1;
        m.diameter_ = l1 - f1;
        m.dual_endpoint = f2;
        m.dual_diameter = l2 - f2;
        m.thin = std::all_of(m.shell_dims.begin(), m.shell_dims.end(),
                             [](int t) { return t <= 1; });
        m.dual_thin = std::all_of(m.dual_shell_dims.begin(), m.dual_shell_dims.end(),
                                  [](int t) { return t <= 1; });
        TDPairReport td = verify_tridiagonal_pair(alg, sub, qp, w, tol);
        m.invariance_residual = td.invariance_residual;
        m.td_pair_ok = td.ok;
        m.td_pair_residual = td.flow_residual;
        m.basis = std::move(w);
        dec.total_dim += static_cast<int>(m.basis.size());
        dec.worst_residual = std::max(dec.worst_residual,
                                      std::max(m.invariance_residual,
                                               m.td_pair_residual));
        dec.modules.push_back(std::move(m));
    }
    std::stable_sort(dec.modules.begin(), dec.modules.end(),
                     [](const TModule& x, const TModule& y) {
                         if (x.endpoint != y.endpoint) return x.endpoint < y.endpoint;
                         if (x.basis.size() != y.basis.size())
                             return x.basis.size() > y.basis.size();
                         return x.dual_endpoint < y.dual_endpoint;
                     });

    std::vector<std::string> keys;
    for (const auto& m : dec.modules) {
        std::string k = std::to_string(m.endpoint) + "/" +
                        std::to_string(m.dual_endpoint) + "/" +
                        std::to_string(m.diameter_);
        for (int t : m.shell_dims) k += "," + std::to_string(t);
        keys.push_back(std::move(k));
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
        bool placed = false;
        for (std::size_t g = 0; g < dec.groups.size(); ++g)
            if (keys[dec.groups[g][0]] == keys[i]) {
                dec.groups[g].push_back(static_cast<int>(i));
                placed = true;
                break;
            }
        if (!placed) dec.groups.push_back({static_cast<int>(i)});
    }
    return dec;
}

RelationReport verify_relations(const GraphAlgebra& alg, const Subconstituent& sub,
                                const QPolyStructure& qp, const TDParams& td,
                                const AWParams& aw, double tol) {
    int n = static_cast<int>(alg.A[0].rows());
    const Matrix& A = alg.A[1];
    const Matrix& As = sub.Astar[qp.order[1]];
    Matrix I = Matrix::identity(n);

    Matrix AA = matmul(A, A);
    Matrix SS = matmul(As, As);
    Matrix AS = matmul(A, As);
    Matrix SA = matmul(As, A);
    Matrix ASA = matmul(AS, A);
    Matrix SAS = matmul(SA, As);

    auto bracket_residual = [&](const Matrix& outer,
                                const std::vector<std::pair<double, const Matrix*>>&
                                    addends) {
        Matrix m(n, n);
        double addmax = 1.0;
        for (const auto& [c, t] : addends) {
            m += c * *t;
            addmax = std::max(addmax, std::fabs(c) * frobenius_norm(*t));
        }
        Matrix br = commutator(outer, m);
        return frobenius_norm(br) / (addmax * std::max(1.0, frobenius_norm(outer)));
    };

    Matrix AAS = matmul(AA, As);   // A^2 A*
    Matrix SAA = matmul(As, AA);   // A* A^2
    Matrix SSA = matmul(SS, A);    // A*^2 A
    Matrix ASS = matmul(A, SS);    // A A*^2

    RelationReport rep;
    rep.td1 = bracket_residual(
        A, {{1.0, &AAS}, {-td.beta, &ASA}, {1.0, &SAA},
            {-td.gamma, &AS}, {-td.gamma, &SA}, {-td.rho, &As}});
    rep.td2 = bracket_residual(
        As, {{1.0, &SSA}, {-td.beta, &SAS}, {1.0, &ASS},
             {-td.gamma_star, &SA}, {-td.gamma_star, &AS}, {-td.rho_star, &A}});

    // Askey-Wilson relations hold on the primary module only; e0 is its
    // projector
    auto restricted_residual =
        [&](const std::vector<std::pair<double, const Matrix*>>& addends) {
            Matrix m(n, n);
            double addmax = 1.0;
            for (const auto& [c, t] : addends) {
                Matrix r = matmul(matmul(sub.e0, *t), sub.e0);
                addmax = std::max(addmax, std::fabs(c) * frobenius_norm(r));
                m += c * r;
            }
            return frobenius_norm(m) / addmax;
        };
    rep.aw1 = restricted_residual(
        {{1.0, &AAS}, {-td.beta, &ASA}, {1.0, &SAA},
         {-td.gamma, &AS}, {-td.gamma, &SA}, {-td.rho, &As},
         {-td.gamma_star, &AA}, {-aw.omega, &A}, {-aw.eta, &I}});
    rep.aw2 = restricted_residual(
        {{1.0, &SSA}, {-td.beta, &SAS}, {1.0, &ASS},
         {-td.gamma_star, &SA}, {-td.gamma_star, &AS}, {-td.rho_star, &A},
         {-td.gamma, &SS}, {-aw.omega, &As}, {-aw.eta_star, &I}});

    double gate = std::max(tol, 1e-12);
    rep.pass = rep.td1 <= gate && rep.td2 <= gate && rep.aw1 <= gate &&
               rep.aw2 <= gate;
    return rep;
}

} // namespace drg
