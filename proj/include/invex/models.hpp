#pragma once

#include <cstdint>
#include <memory>

#include "invex/linalg.hpp"

namespace invex {

// Residual mapping g: R^d -> R^n with value and Jacobian evaluation.
// Implementations are immutable after construction and evaluation is pure.
class DifferentiableMap {
  public:
    virtual ~DifferentiableMap() = default;
    virtual std::size_t input_dim() const = 0;
    virtual std::size_t output_dim() const = 0;
    virtual Vector value(const Vector& x) const = 0;     // g(x); throws NonFinite on NaN/Inf
    virtual Matrix jacobian(const Vector& x) const = 0;  // J_g(x), n x d
};

// g(x) = A x - b.
class AffineMap final : public DifferentiableMap {
  public:
    AffineMap(Matrix a, Vector b);
    std::size_t input_dim() const override { return a_.cols(); }
    std::size_t output_dim() const override { return a_.rows(); }
    Vector value(const Vector& x) const override;
    Matrix jacobian(const Vector& x) const override;
    const Matrix& a() const { return a_; }
    const Vector& b() const { return b_; }

  private:
    Matrix a_;
    Vector b_;
};

// Binary classification with squared loss: g(x) = sigmoid(A x) - b, labels in {0,1}.
class SigmoidClassifierMap final : public DifferentiableMap {
  public:
    SigmoidClassifierMap(Matrix data, Vector labels);
    std::size_t input_dim() const override { return a_.cols(); }
    std::size_t output_dim() const override { return a_.rows(); }
    Vector value(const Vector& x) const override;
    Matrix jacobian(const Vector& x) const override;
    const Matrix& data() const { return a_; }
    const Vector& labels() const { return b_; }

  private:
    Matrix a_;
    Vector b_;
};

// One-hidden-layer tanh network with scalar output, one residual per sample:
// g_i(x) = mlp(a_i; x) - b_i. Parameters are flattened as
// [W1 row-major (h x d_in), b1 (h), w2 (h), b2 (1)].
class TinyMlpMap final : public DifferentiableMap {
  public:
    TinyMlpMap(std::size_t in_dim, std::size_t hidden, Matrix samples, Vector targets);
    std::size_t input_dim() const override { return param_dim_; }
    std::size_t output_dim() const override { return samples_.rows(); }
    Vector value(const Vector& x) const override;
    Matrix jacobian(const Vector& x) const override;
    std::size_t hidden() const { return hidden_; }

  private:
    std::size_t in_dim_, hidden_, param_dim_;
    Matrix samples_;  // n x d_in
    Vector targets_;  // n
};

// Central-difference Jacobian, column j = (g(x + h e_j) - g(x - h e_j)) / 2h.
// Test oracle for analytic Jacobians.
Matrix fd_jacobian(const DifferentiableMap& map, const Vector& x, double h = 1e-6);

// Synthetic classification task: A has i.i.d. standard normal entries (drawn
// row-major), then a planted weight vector w* (d normals), and labels
// b_i = 1 if (A w*)_i >= 0 else 0. Same seed, same bits.
SigmoidClassifierMap synth_classification(std::size_t n, std::size_t d, std::uint64_t seed);

// Random under-determined linear system: A (n x d normals, row-major), then b (n normals).
AffineMap synth_affine(std::size_t n, std::size_t d, std::uint64_t seed);

// Over-parameterized regression task whose targets come from a teacher network
// of the same architecture, so the residual can be driven exactly to zero.
// Draw order: samples row-major, then teacher parameters (output layer scaled
// by 0.5 to keep targets O(1)).
TinyMlpMap synth_mlp(std::size_t n_samples, std::size_t in_dim, std::size_t hidden,
                     std::uint64_t seed);

}  // namespace invex
