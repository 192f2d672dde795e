#pragma once

#include "invex/models.hpp"

namespace invex {

// Point of the augmented problem, (x, p) in R^{d+n}.
struct AugmentedPoint {
    Vector x;
    Vector p;
};

// Extra per-iteration quantities an optimizer records alongside the objective
// value; which ones are meaningful depends on the objective kind.
struct TraceExtras {
    double f_plain;   // 0.5 |g(x)|^2 at the point's x
    double g_norm;    // |g(x)|
    double p_norm;    // |p| (0 for objectives without auxiliary variables)
    double pl_ratio;  // 2 lambda^2 fhat / |grad|^2 (0 for non-augmented objectives)
};

// Objective over a flat parameter vector; what the optimizers drive.
class Objective {
  public:
    virtual ~Objective() = default;
    virtual std::size_t dim() const = 0;
    virtual double value(const Vector& z) const = 0;
    virtual Vector gradient(const Vector& z) const = 0;
    virtual TraceExtras trace_extras(const Vector& z, double value, const Vector& grad) const = 0;
};

// f(x) = 0.5 |g(x)|^2, gradient J^T g.
class PlainObjective final : public Objective {
  public:
    explicit PlainObjective(const DifferentiableMap& map) : map_(map) {}
    std::size_t dim() const override { return map_.input_dim(); }
    double value(const Vector& x) const override;
    Vector gradient(const Vector& x) const override;
    TraceExtras trace_extras(const Vector& x, double value, const Vector& grad) const override;
    const DifferentiableMap& map() const { return map_; }

  private:
    const DifferentiableMap& map_;
};

// f(x) + lambda |x|^2 with the penalty unhalved, gradient J^T g + 2 lambda x.
class L2Objective final : public Objective {
  public:
    L2Objective(const DifferentiableMap& map, double lambda);
    std::size_t dim() const override { return map_.input_dim(); }
    double value(const Vector& x) const override;
    Vector gradient(const Vector& x) const override;
    TraceExtras trace_extras(const Vector& x, double value, const Vector& grad) const override;
    double lambda() const { return lambda_; }

  private:
    const DifferentiableMap& map_;
    double lambda_;
};

// Augmented objective fhat(x,p) = 0.5 |g(x) + lambda p|^2 over z = [x; p].
// Gradient is (J^T r, lambda r) with r = g(x) + lambda p; the p-block is
// assembled as lambda * r entry-wise, which keeps |grad|^2 >= 2 lambda^2 fhat
// exact in floating point.
class InvexObjective final : public Objective {
  public:
    InvexObjective(const DifferentiableMap& map, double lambda);
    std::size_t dim() const override { return map_.input_dim() + map_.output_dim(); }
    double value(const Vector& z) const override;
    Vector gradient(const Vector& z) const override;
    TraceExtras trace_extras(const Vector& z, double value, const Vector& grad) const override;

    double value_at(const AugmentedPoint& pt) const;
    Vector gradient_at(const AugmentedPoint& pt) const;  // stacked, R^{d+n}
    Vector residual(const AugmentedPoint& pt) const;     // g(x) + lambda p

    AugmentedPoint split(const Vector& z) const;
    Vector join(const AugmentedPoint& pt) const;

    double lambda() const { return lambda_; }
    const DifferentiableMap& map() const { return map_; }

  private:
    const DifferentiableMap& map_;
    double lambda_;
};

// Start point the convergence results assume: (x0, 0).
AugmentedPoint augmented_start(const DifferentiableMap& map, const Vector& x0);

// Central-difference gradient of any flat objective; oracle for the analytic ones.
Vector fd_gradient(const Objective& obj, const Vector& z, double h = 1e-6);

}  // namespace invex
