#include "invex/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invex/prng.hpp"

namespace invex {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DimensionMismatch(what);
}

void require_finite(const std::vector<double>& xs, const char* what) {
    for (double x : xs) {
        if (!std::isfinite(x)) throw DimensionMismatch(std::string(what) + ": non-finite entry");
    }
}

}  // namespace

Vector::Vector(std::size_t dim) : v_(dim, 0.0) {
    require(dim > 0, "Vector: dimension must be positive");
}

Vector::Vector(std::initializer_list<double> entries) : v_(entries) {
    require(!v_.empty(), "Vector: dimension must be positive");
    require_finite(v_, "Vector");
}

Vector::Vector(std::vector<double> entries) : v_(std::move(entries)) {
    require(!v_.empty(), "Vector: dimension must be positive");
    require_finite(v_, "Vector");
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {
    require(rows > 0 && cols > 0, "Matrix: dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    require(rows > 0 && cols > 0, "Matrix: dimensions must be positive");
    require(a_.size() == rows * cols, "Matrix: entry count != rows*cols");
    require_finite(a_, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double dot(const Vector& a, const Vector& b) {
    require(a.size() == b.size(), "dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double sum_sq(const Vector& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * a[i];
    return s;
}

double norm(const Vector& a) { return std::sqrt(sum_sq(a)); }

double inf_norm(const Vector& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

bool all_finite(const Vector& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!std::isfinite(a[i])) return false;
    return true;
}

Vector operator+(const Vector& a, const Vector& b) {
    require(a.size() == b.size(), "vector +: size mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b) {
    require(a.size() == b.size(), "vector -: size mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector operator*(double s, const Vector& a) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

Vector concat(const Vector& a, const Vector& b) {
    Vector r(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[a.size() + i] = b[i];
    return r;
}

Vector matvec(const Matrix& M, const Vector& x) {
    require(M.cols() == x.size(), "matvec: size mismatch");
    Vector y(M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < M.cols(); ++j) s += M(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Vector tmatvec(const Matrix& M, const Vector& y) {
    require(M.rows() == y.size(), "tmatvec: size mismatch");
    Vector x(M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i) {
        const double yi = y[i];
        for (std::size_t j = 0; j < M.cols(); ++j) x[j] += M(i, j) * yi;
    }
    return x;
}

Matrix transpose(const Matrix& M) {
    Matrix t(M.cols(), M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) t(j, i) = M(i, j);
    return t;
}

Matrix operator-(const Matrix& A, const Matrix& B) {
    require(A.rows() == B.rows() && A.cols() == B.cols(), "matrix -: shape mismatch");
    Matrix r(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) r(i, j) = A(i, j) - B(i, j);
    return r;
}

Matrix aat(const Matrix& M) {
    Matrix g(M.rows(), M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i) {
        for (std::size_t j = i; j < M.rows(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < M.cols(); ++k) s += M(i, k) * M(j, k);
            g(i, j) = s;
            g(j, i) = s;
        }
    }
    return g;
}

double frobenius_norm(const Matrix& M) {
    double s = 0.0;
    for (double x : M.entries()) s += x * x;
    return std::sqrt(s);
}

double inf_norm(const Matrix& M) {
    double m = 0.0;
    for (double x : M.entries()) m = std::max(m, std::abs(x));
    return m;
}

Vector spd_solve(const Matrix& M, const Vector& rhs, double pivot_min) {
    require(M.rows() == M.cols(), "spd_solve: matrix not square");
    require(M.rows() == rhs.size(), "spd_solve: rhs size mismatch");
    const std::size_t n = M.rows();

    // Lower-triangular Cholesky factor, built in place.
    std::vector<double> L(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = M(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= L[j * n + k] * L[j * n + k];
        if (!(d > pivot_min)) throw NotSpd("spd_solve: pivot " + std::to_string(d) + " at column " + std::to_string(j));
        const double ljj = std::sqrt(d);
        L[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = M(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
            L[i * n + j] = s / ljj;
        }
    }

    // L y = rhs, then L^T z = y.
    Vector z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[i];
        for (std::size_t k = 0; k < i; ++k) s -= L[i * n + k] * z[k];
        z[i] = s / L[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = z[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= L[k * n + ii] * z[k];
        z[ii] = s / L[ii * n + ii];
    }
    return z;
}

Vector row_pinv_apply(const Matrix& M, const Vector& v) {
    require(M.rows() <= M.cols(), "row_pinv_apply: more rows than columns");
    require(M.rows() == v.size(), "row_pinv_apply: size mismatch");
    try {
        return tmatvec(M, spd_solve(aat(M), v));
    } catch (const NotSpd& e) {
        throw NotFullRowRank(std::string("row_pinv_apply: Gram factorization failed (") + e.what() + ")");
    }
}

SymEigen sym_eigen(const Matrix& M) {
    require(M.rows() == M.cols(), "sym_eigen: matrix not square");
    const std::size_t n = M.rows();

    // Work on a symmetrized copy of the upper triangle.
    Matrix S(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            S(i, j) = M(i, j);
            S(j, i) = M(i, j);
        }
    Matrix V = Matrix::identity(n);

    if (n == 1) return {{S(0, 0)}, V};

    const double fnorm = frobenius_norm(S);
    const double stop = 1e-13 * std::max(fnorm, 1e-300);
    const std::size_t max_sweeps = 64;

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * S(p, q) * S(p, q);
        if (std::sqrt(off) <= stop) {
            SymEigen out{std::vector<double>(n), Matrix(n, n)};
            std::vector<std::size_t> order(n);
            for (std::size_t i = 0; i < n; ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return S(a, a) < S(b, b); });
            for (std::size_t j = 0; j < n; ++j) {
                out.values[j] = S(order[j], order[j]);
                for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = V(i, order[j]);
            }
            return out;
        }
        for (std::size_t p = 0; p < n - 1; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = S(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double tau = (S(q, q) - S(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double skp = S(k, p), skq = S(k, q);
                    S(k, p) = c * skp - s * skq;
                    S(k, q) = s * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double spk = S(p, k), sqk = S(q, k);
                    S(p, k) = c * spk - s * sqk;
                    S(q, k) = s * spk + c * sqk;
                }
                S(p, q) = 0.0;
                S(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    throw NoConvergence("sym_eigen: Jacobi did not converge in 64 sweeps");
}

std::pair<double, double> extreme_eigs_sym(const Matrix& M) {
    const SymEigen e = sym_eigen(M);
    return {e.values.front(), e.values.back()};
}

double spectral_norm(const Matrix& M) {
    const Matrix gram = M.rows() <= M.cols() ? aat(M) : aat(transpose(M));
    return std::sqrt(std::max(extreme_eigs_sym(gram).second, 0.0));
}

double spectral_norm_est(const Matrix& M, std::uint64_t seed, std::size_t max_iters, double rel_tol) {
    // Power iteration on the smaller-side Gram operator: v -> M^T(Mv) or M(M^T v).
    const bool tall = M.rows() > M.cols();
    const std::size_t n = tall ? M.cols() : M.rows();
    Prng rng(seed ^ 0x5eedf00dULL);
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.normal();
    double vn = norm(v);
    if (vn == 0.0) v[0] = 1.0, vn = 1.0;
    for (std::size_t i = 0; i < n; ++i) v[i] /= vn;

    double rho_prev = -1.0;
    for (std::size_t it = 0; it < max_iters; ++it) {
        const Vector w = tall ? tmatvec(M, matvec(M, v)) : matvec(M, tmatvec(M, v));
        const double rho = dot(v, w);  // Rayleigh quotient for the Gram operator
        const double wn = norm(w);
        if (wn <= 1e-300) return 0.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
        if (it > 0 && std::abs(rho - rho_prev) <= rel_tol * std::max(std::abs(rho), 1e-300)) {
            return std::sqrt(std::max(rho, 0.0));
        }
        rho_prev = rho;
    }
    throw NoConvergence("spectral_norm_est: power iteration did not converge");
}

}  // namespace invex
