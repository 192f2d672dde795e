#include "invex/objectives.hpp"

#include <cmath>

namespace invex {

namespace {

double half_sum_sq(const Vector& v) { return 0.5 * sum_sq(v); }

}  // namespace

double PlainObjective::value(const Vector& x) const { return half_sum_sq(map_.value(x)); }

Vector PlainObjective::gradient(const Vector& x) const {
    return tmatvec(map_.jacobian(x), map_.value(x));
}

TraceExtras PlainObjective::trace_extras(const Vector& x, double value, const Vector&) const {
    return {value, std::sqrt(2.0 * value), 0.0, 0.0};
}

L2Objective::L2Objective(const DifferentiableMap& map, double lambda) : map_(map), lambda_(lambda) {
    if (!(lambda > 0.0)) throw DimensionMismatch("L2Objective: lambda must be positive");
}

double L2Objective::value(const Vector& x) const {
    return half_sum_sq(map_.value(x)) + lambda_ * sum_sq(x);
}

Vector L2Objective::gradient(const Vector& x) const {
    Vector grad = tmatvec(map_.jacobian(x), map_.value(x));
    for (std::size_t i = 0; i < x.size(); ++i) grad[i] += 2.0 * lambda_ * x[i];
    return grad;
}

TraceExtras L2Objective::trace_extras(const Vector& x, double, const Vector&) const {
    const double f = half_sum_sq(map_.value(x));
    return {f, std::sqrt(2.0 * f), 0.0, 0.0};
}

InvexObjective::InvexObjective(const DifferentiableMap& map, double lambda)
    : map_(map), lambda_(lambda) {
    if (!(lambda > 0.0)) throw DimensionMismatch("InvexObjective: lambda must be positive");
}

AugmentedPoint InvexObjective::split(const Vector& z) const {
    const std::size_t d = map_.input_dim(), n = map_.output_dim();
    if (z.size() != d + n) throw DimensionMismatch("InvexObjective: point has wrong dimension");
    Vector x(d), p(n);
    for (std::size_t i = 0; i < d; ++i) x[i] = z[i];
    for (std::size_t i = 0; i < n; ++i) p[i] = z[d + i];
    return {std::move(x), std::move(p)};
}

Vector InvexObjective::join(const AugmentedPoint& pt) const {
    if (pt.x.size() != map_.input_dim() || pt.p.size() != map_.output_dim())
        throw DimensionMismatch("InvexObjective: augmented point has wrong dimensions");
    return concat(pt.x, pt.p);
}

Vector InvexObjective::residual(const AugmentedPoint& pt) const {
    Vector r = map_.value(pt.x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += lambda_ * pt.p[i];
    return r;
}

double InvexObjective::value_at(const AugmentedPoint& pt) const {
    return half_sum_sq(residual(pt));
}

Vector InvexObjective::gradient_at(const AugmentedPoint& pt) const {
    const Vector r = residual(pt);
    Vector grad_x = tmatvec(map_.jacobian(pt.x), r);
    Vector grad_p(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) grad_p[i] = lambda_ * r[i];
    return concat(grad_x, grad_p);
}

double InvexObjective::value(const Vector& z) const { return value_at(split(z)); }

Vector InvexObjective::gradient(const Vector& z) const { return gradient_at(split(z)); }

TraceExtras InvexObjective::trace_extras(const Vector& z, double value, const Vector& grad) const {
    const AugmentedPoint pt = split(z);
    const double f = half_sum_sq(map_.value(pt.x));
    const double grad_sq = sum_sq(grad);
    const double ratio = grad_sq > 0.0 ? 2.0 * lambda_ * lambda_ * value / grad_sq : 0.0;
    return {f, std::sqrt(2.0 * f), norm(pt.p), ratio};
}

AugmentedPoint augmented_start(const DifferentiableMap& map, const Vector& x0) {
    if (x0.size() != map.input_dim()) throw DimensionMismatch("augmented_start: x0 has wrong dimension");
    return {x0, Vector(map.output_dim())};
}

Vector fd_gradient(const Objective& obj, const Vector& z, double h) {
    if (!(h > 0.0)) throw DimensionMismatch("fd_gradient: step must be positive");
    Vector zp(z.entries());
    Vector grad(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double orig = zp[i];
        zp[i] = orig + h;
        const double plus = obj.value(zp);
        zp[i] = orig - h;
        const double minus = obj.value(zp);
        zp[i] = orig;
        grad[i] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

}  // namespace invex
