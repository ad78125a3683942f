#include "drg/linalg.hpp"

#include "drg/exec.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace drg {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& x : a_) x *= s;
    return *this;
}

namespace {

// One output row of a product; shared by both matmul paths so their
// summation order, and therefore their rounding, is identical.
inline void product_row(const Matrix& a, const Matrix& b, std::size_t i, double* out) {
    std::size_t n = b.cols(), k = a.cols();
    for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
    const double* arow = a.row(i);
    for (std::size_t l = 0; l < k; ++l) {
        double av = arow[l];
        if (av == 0.0) continue;
        const double* brow = b.row(l);
        for (std::size_t j = 0; j < n; ++j) out[j] += av * brow[j];
    }
}

} // namespace

Matrix matmul_serial(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) product_row(a, b, i, c.row(i));
    return c;
}

Matrix matmul_parallel(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    Matrix c(a.rows(), b.cols());
    const long rows = static_cast<long>(a.rows());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < rows; ++i)
        product_row(a, b, static_cast<std::size_t>(i), c.row(static_cast<std::size_t>(i)));
    return c;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    return exec::mode() == exec::Mode::parallel ? matmul_parallel(a, b)
                                                : matmul_serial(a, b);
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hadamard: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) * b(i, j);
    return c;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    return matmul(a, b) - matmul(b, a);
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* row = a.row(i);
        double s = 0;
        for (std::size_t j = 0; j < x.size(); ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

double frobenius_norm(const Matrix& a) {
    double s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

double max_abs_entry(const Matrix& a) {
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j)));
    return m;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

namespace {

// Implicit-shift QL on a tridiagonal (d, off); off[i] couples i and i+1 and
// must have size n with off[n-1] = 0.  Columns of *z, when given, are rotated
// along; initialize z before calling.
void ql_implicit(std::vector<double>& d, std::vector<double>& off, Matrix* z) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(off[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error("tridiagonal QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * off[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + off[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * off[i];
                    double b = c * off[i];
                    r = std::hypot(f, g);
                    off[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        off[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z)
                        for (int k = 0; k < n; ++k) {
                            f = (*z)(k, i + 1);
                            (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
                            (*z)(k, i) = c * (*z)(k, i) - s * f;
                        }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                off[l] = g;
                off[m] = 0.0;
            }
        } while (m != l);
    }

    // ascending order, eigenvector columns along
    for (int i = 0; i < n - 1; ++i) {
        int lo = i;
        for (int j = i + 1; j < n; ++j)
            if (d[j] < d[lo]) lo = j;
        if (lo != i) {
            std::swap(d[i], d[lo]);
            if (z)
                for (int k = 0; k < n; ++k) std::swap((*z)(k, i), (*z)(k, lo));
        }
    }
}

} // namespace

std::vector<double> tridiag_eigen(std::vector<double> d, std::vector<double> e,
                                  Matrix* z) {
    if (e.size() + 1 != d.size())
        throw std::invalid_argument("tridiag_eigen: off-diagonal size must be n-1");
    e.push_back(0.0);
    if (z) *z = Matrix::identity(d.size());
    ql_implicit(d, e, z);
    return d;
}

void symmetric_eigen(const Matrix& a, std::vector<double>& values, Matrix& vecs) {
    if (a.rows() != a.cols()) throw std::invalid_argument("symmetric_eigen: not square");
    const int n = static_cast<int>(a.rows());
    vecs = a;
    values.assign(n, 0.0);
    std::vector<double> d(n, 0.0), e(n, 0.0);
    Matrix& v = vecs;

    // Householder reduction to tridiagonal form, transformations accumulated
    // into v.  e[i] holds the coupling of i-1 and i, e[0] = 0.
    for (int j = 0; j < n; ++j) d[j] = v(n - 1, j);
    for (int i = n - 1; i > 0; --i) {
        double scale = 0.0, h = 0.0;
        for (int k = 0; k < i; ++k) scale += std::fabs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (int j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (int k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (int j = 0; j < i; ++j) e[j] = 0.0;
            for (int j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                for (int k = j + 1; k <= i - 1; ++k) {
                    g += v(k, j) * d[k];
                    e[k] += v(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (int j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            double hh = f / (h + h);
            for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (int j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (int k = j; k <= i - 1; ++k) v(k, j) -= f * e[k] + g * d[k];
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }
    for (int i = 0; i < n - 1; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        double h = d[i + 1];
        if (h != 0.0) {
            for (int k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
            for (int j = 0; j <= i; ++j) {
                double g = 0.0;
                for (int k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
                for (int k = 0; k <= i; ++k) v(k, j) -= g * d[k];
            }
        }
        for (int k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
    }
    for (int j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;

    std::vector<double> off(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) off[i] = e[i + 1];
    ql_implicit(d, off, &v);
    values = d;
}

std::size_t grow_orthonormal_basis(std::vector<std::vector<double>>& basis,
                                   const std::vector<std::vector<double>>& vecs,
                                   double tol) {
    if (vecs.empty()) return 0;
    std::vector<std::vector<double>> work = vecs;
    double scale = 0.0;
    for (const auto& w : work) scale = std::max(scale, norm2(w));
    if (scale == 0.0) return 0;

    auto project_out = [](std::vector<double>& w, const std::vector<double>& q) {
        double t = dot(w, q);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= t * q[i];
    };

    // residuals against the existing basis, two passes for stability
    for (auto& w : work)
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) project_out(w, q);

    std::size_t added = 0;
    const double threshold = tol * scale;
    for (;;) {
        std::size_t best = 0;
        double best_norm = -1.0;
        for (std::size_t t = 0; t < work.size(); ++t) {
            double nn = norm2(work[t]);
            if (nn > best_norm) {
                best_norm = nn;
                best = t;
            }
        }
        if (best_norm <= threshold) break;

        std::vector<double> q = work[best];
        for (const auto& b : basis) project_out(q, b);   // stability touch-up
        double nn = norm2(q);
        if (nn <= threshold) {
            work[best].assign(work[best].size(), 0.0);
            continue;
        }
        for (double& x : q) x /= nn;
        for (auto& w : work) project_out(w, q);
        basis.push_back(std::move(q));
        ++added;
    }
    return added;
}

double subspace_gap(const std::vector<std::vector<double>>& p,
                    const std::vector<std::vector<double>>& q) {
    auto residual = [](const std::vector<double>& v,
                       const std::vector<std::vector<double>>& basis) {
        std::vector<double> r = v;
        for (const auto& b : basis) {
            double t = dot(r, b);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= t * b[i];
        }
        return norm2(r);
    };
    double gap = 0.0;
    for (const auto& v : q) gap = std::max(gap, residual(v, p));
    for (const auto& v : p) gap = std::max(gap, residual(v, q));
    return gap;
}

} // namespace drg
