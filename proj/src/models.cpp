#include "invex/models.hpp"

#include <cmath>
#include <string>

#include "invex/prng.hpp"

namespace invex {

namespace {

void check_input(const DifferentiableMap& map, const Vector& x) {
    if (x.size() != map.input_dim())
        throw DimensionMismatch("map: x has dim " + std::to_string(x.size()) + ", expected " +
                                std::to_string(map.input_dim()));
}

void check_finite(const Vector& v, const char* who) {
    if (!all_finite(v)) throw NonFinite(std::string(who) + ": produced NaN/Inf");
}

double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

}  // namespace

AffineMap::AffineMap(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != b_.size()) throw DimensionMismatch("AffineMap: rows(A) != dim(b)");
}

Vector AffineMap::value(const Vector& x) const {
    check_input(*this, x);
    Vector g = matvec(a_, x) - b_;
    check_finite(g, "AffineMap");
    return g;
}

Matrix AffineMap::jacobian(const Vector& x) const {
    check_input(*this, x);
    return a_;
}

SigmoidClassifierMap::SigmoidClassifierMap(Matrix data, Vector labels)
    : a_(std::move(data)), b_(std::move(labels)) {
    if (a_.rows() != b_.size()) throw DimensionMismatch("SigmoidClassifierMap: rows(A) != dim(b)");
    for (std::size_t i = 0; i < b_.size(); ++i) {
        if (b_[i] != 0.0 && b_[i] != 1.0)
            throw DimensionMismatch("SigmoidClassifierMap: label not in {0,1}");
    }
}

Vector SigmoidClassifierMap::value(const Vector& x) const {
    check_input(*this, x);
    Vector g = matvec(a_, x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = sigmoid(g[i]) - b_[i];
    check_finite(g, "SigmoidClassifierMap");
    return g;
}

Matrix SigmoidClassifierMap::jacobian(const Vector& x) const {
    check_input(*this, x);
    const Vector z = matvec(a_, x);
    Matrix j(a_.rows(), a_.cols());
    for (std::size_t i = 0; i < a_.rows(); ++i) {
        const double s = sigmoid(z[i]);
        const double sp = s * (1.0 - s);
        for (std::size_t k = 0; k < a_.cols(); ++k) j(i, k) = sp * a_(i, k);
    }
    return j;
}

TinyMlpMap::TinyMlpMap(std::size_t in_dim, std::size_t hidden, Matrix samples, Vector targets)
    : in_dim_(in_dim),
      hidden_(hidden),
      param_dim_(hidden * in_dim + hidden + hidden + 1),
      samples_(std::move(samples)),
      targets_(std::move(targets)) {
    if (samples_.cols() != in_dim_) throw DimensionMismatch("TinyMlpMap: cols(samples) != in_dim");
    if (samples_.rows() != targets_.size())
        throw DimensionMismatch("TinyMlpMap: rows(samples) != dim(targets)");
}

Vector TinyMlpMap::value(const Vector& x) const {
    check_input(*this, x);
    const std::size_t h = hidden_, d = in_dim_;
    const double* w1 = x.data();              // h x d, row-major
    const double* b1 = x.data() + h * d;      // h
    const double* w2 = x.data() + h * d + h;  // h
    const double b2 = x[h * d + 2 * h];

    Vector g(samples_.rows());
    for (std::size_t i = 0; i < samples_.rows(); ++i) {
        double out = b2;
        for (std::size_t j = 0; j < h; ++j) {
            double z = b1[j];
            for (std::size_t k = 0; k < d; ++k) z += w1[j * d + k] * samples_(i, k);
            out += w2[j] * std::tanh(z);
        }
        g[i] = out - targets_[i];
    }
    check_finite(g, "TinyMlpMap");
    return g;
}

Matrix TinyMlpMap::jacobian(const Vector& x) const {
    check_input(*this, x);
    const std::size_t h = hidden_, d = in_dim_;
    const double* w1 = x.data();
    const double* b1 = x.data() + h * d;
    const double* w2 = x.data() + h * d + h;

    Matrix jac(samples_.rows(), param_dim_);
    for (std::size_t i = 0; i < samples_.rows(); ++i) {
        for (std::size_t j = 0; j < h; ++j) {
            double z = b1[j];
            for (std::size_t k = 0; k < d; ++k) z += w1[j * d + k] * samples_(i, k);
            const double u = std::tanh(z);
            const double du = 1.0 - u * u;
            const double back = w2[j] * du;
            for (std::size_t k = 0; k < d; ++k) jac(i, j * d + k) = back * samples_(i, k);
            jac(i, h * d + j) = back;       // d out / d b1_j
            jac(i, h * d + h + j) = u;      // d out / d w2_j
        }
        jac(i, h * d + 2 * h) = 1.0;        // d out / d b2
    }
    return jac;
}

Matrix fd_jacobian(const DifferentiableMap& map, const Vector& x, double h) {
    if (!(h > 0.0)) throw DimensionMismatch("fd_jacobian: step must be positive");
    check_input(map, x);
    Matrix j(map.output_dim(), map.input_dim());
    Vector xp(x.entries());
    for (std::size_t col = 0; col < map.input_dim(); ++col) {
        const double orig = xp[col];
        xp[col] = orig + h;
        const Vector plus = map.value(xp);
        xp[col] = orig - h;
        const Vector minus = map.value(xp);
        xp[col] = orig;
        for (std::size_t row = 0; row < map.output_dim(); ++row)
            j(row, col) = (plus[row] - minus[row]) / (2.0 * h);
    }
    return j;
}

SigmoidClassifierMap synth_classification(std::size_t n, std::size_t d, std::uint64_t seed) {
    Prng rng(seed);
    Matrix a(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) a(i, j) = rng.normal();
    Vector wstar(d);
    for (std::size_t j = 0; j < d; ++j) wstar[j] = rng.normal();
    const Vector score = matvec(a, wstar);
    Vector labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = score[i] >= 0.0 ? 1.0 : 0.0;
    return SigmoidClassifierMap(std::move(a), std::move(labels));
}

AffineMap synth_affine(std::size_t n, std::size_t d, std::uint64_t seed) {
    Prng rng(seed);
    Matrix a(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) a(i, j) = rng.normal();
    Vector b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = rng.normal();
    return AffineMap(std::move(a), std::move(b));
}

TinyMlpMap synth_mlp(std::size_t n_samples, std::size_t in_dim, std::size_t hidden,
                     std::uint64_t seed) {
    Prng rng(seed);
    Matrix samples(n_samples, in_dim);
    for (std::size_t i = 0; i < n_samples; ++i)
        for (std::size_t j = 0; j < in_dim; ++j) samples(i, j) = rng.normal();

    const std::size_t pdim = hidden * in_dim + 2 * hidden + 1;
    Vector teacher(pdim);
    for (std::size_t i = 0; i < hidden * in_dim + hidden; ++i) teacher[i] = rng.normal();
    for (std::size_t i = hidden * in_dim + hidden; i < pdim; ++i) teacher[i] = 0.5 * rng.normal();

    const TinyMlpMap zero_target(in_dim, hidden, samples, Vector(n_samples));
    Vector targets = zero_target.value(teacher);  // teacher outputs
    return TinyMlpMap(in_dim, hidden, std::move(samples), std::move(targets));
}

}  // namespace invex
