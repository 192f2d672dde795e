#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "invex/objectives.hpp"

namespace invex {

struct GdConfig {
    // Fixed step size; empty means automatic: safety / L_hat with L_hat from
    // the smoothness estimator (augmented objectives only).
    std::optional<double> step_size;
    std::size_t max_iters = 200000;
    double grad_tol = 1e-10;
    bool record_points = false;
    double divergence_factor = 1e12;   // abort once value exceeds factor * initial value
    double auto_safety = 0.9;
    std::size_t auto_samples = 64;     // smoothness-estimator samples for automatic steps
    std::uint64_t auto_seed = 1;
    double auto_f_min = 0.0;
};

struct AdamConfig {
    double step_size = 1e-3;
    double beta1 = 0.5;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::size_t max_iters = 10000;
    bool record_points = false;
    double divergence_factor = 1e12;
};

enum class StopReason { GradTol, MaxIters };
enum class OptimAlgo { Gd, Adam };

struct TraceRecord {
    std::size_t t;
    double fhat;       // objective value at z_t (equals f for non-augmented runs)
    double f;          // plain 0.5 |g(x_t)|^2
    double grad_norm;
    double step_len;   // |z_{t+1} - z_t|; 0 on the final record
    double path_len;   // sum of step lengths through the step leaving z_t
    double pl_ratio;
    double g_norm;
    double p_norm;
};

struct IterationTrace {
    std::vector<TraceRecord> records;
    Vector final_point;
    StopReason reason;
    OptimAlgo algo;
    double step_size;
    double lambda;                  // 0 for non-augmented runs
    std::vector<Vector> points;     // full iterates, only when requested

    bool has_points() const { return !points.empty(); }
    const TraceRecord& final_record() const { return records.back(); }
    double total_path_length() const { return records.back().path_len; }
};

IterationTrace gd_run(const Objective& objective, const Vector& start, const GdConfig& cfg);
IterationTrace gd_run(const InvexObjective& objective, const AugmentedPoint& start,
                      const GdConfig& cfg);

IterationTrace adam_run(const Objective& objective, const Vector& start, const AdamConfig& cfg);
IterationTrace adam_run(const InvexObjective& objective, const AugmentedPoint& start,
                        const AdamConfig& cfg);

// Replays the auxiliary-variable recursion p_{t+1} = p_0 - a*l*sum_{i<=t}(g(x_i) + l*p_i)
// against the stored iterates and returns the largest deviation. Requires a
// fixed-step GD trace on an augmented objective, recorded with points.
double p_recursion_check(const IterationTrace& trace, const InvexObjective& objective);

}  // namespace invex
