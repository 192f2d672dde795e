#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "invex/errors.hpp"
#include "invex/tolerances.hpp"

namespace invex {

// Dense column vector. Constructors taking data validate that every entry is
// finite and the dimension is positive; the sized constructor zero-fills and
// is what internal arithmetic uses, so intermediate results may legitimately
// carry Inf/NaN (divergence detection wants to observe them).
class Vector {
  public:
    explicit Vector(std::size_t dim);
    Vector(std::initializer_list<double> entries);
    explicit Vector(std::vector<double> entries);

    std::size_t size() const { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }
    double& operator[](std::size_t i) { return v_[i]; }
    const double* data() const { return v_.data(); }
    double* data() { return v_.data(); }
    const std::vector<double>& entries() const { return v_; }

    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

  private:
    struct Unchecked {};
    Vector(std::vector<double> entries, Unchecked) : v_(std::move(entries)) {}
    std::vector<double> v_;
};

// Row-major dense matrix.
class Matrix {
  public:
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const std::vector<double>& entries() const { return a_; }

  private:
    std::size_t rows_, cols_;
    std::vector<double> a_;
};

// ---- vector arithmetic ----

double dot(const Vector& a, const Vector& b);
double sum_sq(const Vector& a);  // exact-in-FP nonnegative sum of squares
double norm(const Vector& a);
double inf_norm(const Vector& a);
bool all_finite(const Vector& a);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& a);
Vector concat(const Vector& a, const Vector& b);

// ---- matrix arithmetic ----

Vector matvec(const Matrix& M, const Vector& x);      // M x
Vector tmatvec(const Matrix& M, const Vector& y);     // M^T y
Matrix transpose(const Matrix& M);
Matrix operator-(const Matrix& A, const Matrix& B);
Matrix aat(const Matrix& M);                          // M M^T, symmetric fill
double frobenius_norm(const Matrix& M);
double inf_norm(const Matrix& M);                     // max |entry|

// ---- factorizations and eigenvalues ----

// Solve M z = rhs for symmetric positive definite M via Cholesky. Pivots at
// or below `pivot_min` raise NotSpd. Relative residual is kSpdSolveRel or
// better for the matrices this project feeds it.
Vector spd_solve(const Matrix& M, const Vector& rhs, double pivot_min = kCholPivotMin);

// Minimum-norm preimage M^+ v = M^T (M M^T)^{-1} v for full-row-rank M.
// The normal-equations route is exact enough here because every matrix this
// is applied to is [J lambda*I]-shaped, so M M^T = J J^T + lambda^2 I has
// condition bounded by (sigma_max(J)^2 + lambda^2) / lambda^2.
Vector row_pinv_apply(const Matrix& M, const Vector& v);

struct SymEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column j pairs with values[j]
};

// Full symmetric eigendecomposition by cyclic Jacobi. Reads the upper
// triangle; the caller guarantees symmetry.
SymEigen sym_eigen(const Matrix& M);

// (lambda_min, lambda_max) of a symmetric matrix, relative accuracy kEigRel.
std::pair<double, double> extreme_eigs_sym(const Matrix& M);

// Largest singular value via the symmetric eigensolve of the smaller-side
// Gram matrix.
double spectral_norm(const Matrix& M);

// Largest singular value by power iteration on the Gram matrix of the smaller
// side. Deterministic start vector from `seed`.
double spectral_norm_est(const Matrix& M, std::uint64_t seed = 0,
                         std::size_t max_iters = 500, double rel_tol = 1e-10);

}  // namespace invex
