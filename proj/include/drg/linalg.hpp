#pragma once

#include <cstddef>
#include <vector>

namespace drg {

// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows_(r), cols_(c), a_(r * c, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    double* row(std::size_t i) { return a_.data() + i * cols_; }
    const double* row(std::size_t i) const { return a_.data() + i * cols_; }

    Matrix transpose() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

private:
    std::size_t rows_, cols_;
    std::vector<double> a_;
};

// Kernels with serial and OpenMP paths; exec::mode() picks at runtime.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_serial(const Matrix& a, const Matrix& b);
Matrix matmul_parallel(const Matrix& a, const Matrix& b);

Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);       // ab - ba
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

double frobenius_norm(const Matrix& a);
double max_abs_entry(const Matrix& a);
double dot(const std::vector<double>& x, const std::vector<double>& y);
double norm2(const std::vector<double>& x);

// Eigenvalues (and optionally eigenvectors) of a symmetric tridiagonal matrix,
// diag d and off-diagonal e (e[i] couples i and i+1).  Implicit-shift QL.
// Returns eigenvalues ascending; if z is non-null it receives the column
// eigenvector matrix.
std::vector<double> tridiag_eigen(std::vector<double> d, std::vector<double> e,
                                  Matrix* z = nullptr);

// Full symmetric eigensolve: Householder reduction then QL.  Eigenvalues
// ascending, columns of vecs are orthonormal eigenvectors.
void symmetric_eigen(const Matrix& a, std::vector<double>& values, Matrix& vecs);

// Pivoted modified Gram-Schmidt.  Appends to `basis` an orthonormal basis of
// the span of `vecs` beyond what `basis` already covers; a vector joins only
// if its residual exceeds tol times the largest input norm.  Returns the
// number of vectors added.
std::size_t grow_orthonormal_basis(std::vector<std::vector<double>>& basis,
                                   const std::vector<std::vector<double>>& vecs,
                                   double tol);

// sin of the largest principal angle between the spans of two orthonormal
// bases, measured as the worst projection residual in either direction.
double subspace_gap(const std::vector<std::vector<double>>& p,
                    const std::vector<std::vector<double>>& q);

} // namespace drg
