#include "invex/optimizers.hpp"

#include <cmath>
#include <string>

#include "invex/analysis.hpp"

namespace invex {

namespace {

double resolve_step(const Objective& objective, const Vector& start, const GdConfig& cfg) {
    if (cfg.step_size) {
        if (!(*cfg.step_size > 0.0)) throw ConfigError("gd_run: step size must be positive");
        return *cfg.step_size;
    }
    const auto* inv = dynamic_cast<const InvexObjective*>(&objective);
    if (inv == nullptr)
        throw ConfigError("gd_run: automatic step size requires the augmented objective");
    const Vector x0 = inv->split(start).x;
    const SmoothnessEstimate est =
        estimate_L(*inv, x0, cfg.auto_samples, cfg.auto_seed, Tolerances{}, cfg.auto_f_min);
    return cfg.auto_safety / est.L_hat;
}

struct LoopLimits {
    std::size_t max_iters;
    double grad_tol;
    double divergence_factor;
    bool record_points;
};

// Shared driver: `advance(z, grad, t)` returns the next iterate.
template <typename Advance>
IterationTrace run_loop(const Objective& objective, Vector z, const LoopLimits& lim,
                        OptimAlgo algo, double step_size, double lambda, Advance advance) {
    if (z.size() != objective.dim()) throw DimensionMismatch("optimizer: start has wrong dimension");

    double fhat = objective.value(z);
    if (!std::isfinite(fhat)) throw NonFinite("optimizer: objective non-finite at start");
    const double escape = lim.divergence_factor * std::max(fhat, 1e-300);

    IterationTrace trace{{}, z, StopReason::MaxIters, algo, step_size, lambda, {}};
    Vector grad = objective.gradient(z);
    double path = 0.0;

    for (std::size_t t = 0;; ++t) {
        const double gnorm = norm(grad);
        if (!std::isfinite(gnorm))
            throw NonFinite("optimizer: gradient non-finite at t=" + std::to_string(t));
        const TraceExtras extras = objective.trace_extras(z, fhat, grad);
        if (lim.record_points) trace.points.push_back(z);

        const bool at_tol = gnorm <= lim.grad_tol;
        if (at_tol || t >= lim.max_iters) {
            trace.records.push_back({t, fhat, extras.f_plain, gnorm, 0.0, path, extras.pl_ratio,
                                     extras.g_norm, extras.p_norm});
            trace.final_point = z;
            trace.reason = at_tol ? StopReason::GradTol : StopReason::MaxIters;
            return trace;
        }

        Vector znext = advance(z, grad, t);
        const double slen = norm(znext - z);
        const double fnext = objective.value(znext);
        if (!std::isfinite(fnext) || fnext > escape)
            throw NonFinite("optimizer: diverged at t=" + std::to_string(t) +
                            " (value=" + std::to_string(fnext) + "); step size too large");

        path += slen;
        trace.records.push_back(
            {t, fhat, extras.f_plain, gnorm, slen, path, extras.pl_ratio, extras.g_norm, extras.p_norm});
        z = std::move(znext);
        fhat = fnext;
        grad = objective.gradient(z);
    }
}

double objective_lambda(const Objective& objective) {
    const auto* inv = dynamic_cast<const InvexObjective*>(&objective);
    return inv != nullptr ? inv->lambda() : 0.0;
}

}  // namespace

IterationTrace gd_run(const Objective& objective, const Vector& start, const GdConfig& cfg) {
    if (cfg.max_iters < 1) throw ConfigError("gd_run: max_iters must be at least 1");
    const double alpha = resolve_step(objective, start, cfg);
    const LoopLimits lim{cfg.max_iters, cfg.grad_tol, cfg.divergence_factor, cfg.record_points};
    return run_loop(objective, start, lim, OptimAlgo::Gd, alpha, objective_lambda(objective),
                    [alpha](const Vector& z, const Vector& grad, std::size_t) {
                        Vector znext(z.size());
                        for (std::size_t i = 0; i < z.size(); ++i) znext[i] = z[i] - alpha * grad[i];
                        return znext;
                    });
}

IterationTrace gd_run(const InvexObjective& objective, const AugmentedPoint& start,
                      const GdConfig& cfg) {
    return gd_run(objective, objective.join(start), cfg);
}

IterationTrace adam_run(const Objective& objective, const Vector& start, const AdamConfig& cfg) {
    if (cfg.max_iters < 1) throw ConfigError("adam_run: max_iters must be at least 1");
    if (!(cfg.step_size > 0.0)) throw ConfigError("adam_run: step size must be positive");
    if (!(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0 && cfg.beta2 >= 0.0 && cfg.beta2 < 1.0))
        throw ConfigError("adam_run: betas must lie in [0, 1)");

    const std::size_t dim = objective.dim();
    Vector m(dim), v(dim);
    double b1pow = 1.0, b2pow = 1.0;
    const LoopLimits lim{cfg.max_iters, 0.0, cfg.divergence_factor, cfg.record_points};
    return run_loop(objective, start, lim, OptimAlgo::Adam, cfg.step_size,
                    objective_lambda(objective),
                    [&](const Vector& z, const Vector& grad, std::size_t) {
                        b1pow *= cfg.beta1;
                        b2pow *= cfg.beta2;
                        Vector znext(dim);
                        for (std::size_t i = 0; i < dim; ++i) {
                            m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * grad[i];
                            v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
                            const double mhat = m[i] / (1.0 - b1pow);
                            const double vhat = v[i] / (1.0 - b2pow);
                            znext[i] = z[i] - cfg.step_size * mhat / (std::sqrt(vhat) + cfg.eps);
                        }
                        return znext;
                    });
}

IterationTrace adam_run(const InvexObjective& objective, const AugmentedPoint& start,
                        const AdamConfig& cfg) {
    return adam_run(objective, objective.join(start), cfg);
}

double p_recursion_check(const IterationTrace& trace, const InvexObjective& objective) {
    if (trace.algo != OptimAlgo::Gd)
        throw InvalidTrace("p_recursion_check: requires a fixed-step GD trace");
    if (trace.lambda <= 0.0)
        throw InvalidTrace("p_recursion_check: trace is not from an augmented objective");
    if (!trace.has_points())
        throw TraceIncomplete("p_recursion_check: trace was recorded without points");

    const double alpha = trace.step_size;
    const double lambda = objective.lambda();
    const std::size_t n = objective.map().output_dim();

    const AugmentedPoint start = objective.split(trace.points.front());
    Vector running_sum(n);  // sum_{i<=t} (g(x_i) + lambda p_i), stored iterates
    double max_dev = 0.0;
    for (std::size_t t = 0; t + 1 < trace.points.size(); ++t) {
        const AugmentedPoint pt = objective.split(trace.points[t]);
        const Vector g = objective.map().value(pt.x);
        for (std::size_t i = 0; i < n; ++i) running_sum[i] += g[i] + lambda * pt.p[i];

        const AugmentedPoint next = objective.split(trace.points[t + 1]);
        double dev_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double expected = start.p[i] - alpha * lambda * running_sum[i];
            const double diff = expected - next.p[i];
            dev_sq += diff * diff;
        }
        max_dev = std::max(max_dev, std::sqrt(dev_sq));
    }
    return max_dev;
}

}  // namespace invex
