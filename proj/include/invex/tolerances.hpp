#pragma once

#include <cstddef>

namespace invex {

// Numerical constants used by the linear algebra kernels.
inline constexpr double kCholPivotMin = 1e-14;   // pivot at or below this -> NotSpd
inline constexpr double kSpdSolveRel = 1e-12;    // guaranteed relative residual of spd_solve
inline constexpr double kEigRel = 1e-8;          // accuracy contract of extreme_eigs_sym

// All check tolerances and estimator knobs in one record. Defaults are the
// values the bundled verification suite is pinned to; harness configs may
// override individual fields.
struct Tolerances {
    double fd_step = 1e-6;            // central-difference step for gradient/jacobian checks
    double hvp_step = 1e-5;           // central-difference step for Hessian-vector products
    std::size_t power_max_iters = 200;
    double power_rel = 1e-8;

    double pl_slack = 1e-9;           // PL ratio must be <= 1 + pl_slack
    double invexity_slack = 1e-9;     // gap >= -invexity_slack * (1 + |f1| + |f2|)
    double rate_slack = 1e-9;         // fhat_t <= bound_t + rate_slack * fhat_0
    double pinv_residual = 1e-10;     // |M M^+ v - v| <= pinv_residual * |v|
    double eig_floor_slack = 1e-12;   // lambda_min >= lambda^2 * (1 - eig_floor_slack)
    double ridge_equiv_inf = 1e-6;    // |x_gd - x_ridge|_inf
    double ridge_p_consistency = 1e-8;  // |p_gd - (b - A x_gd)/lambda| <= tol * |b|
    double grad_check = 1e-5;         // analytic-vs-FD gradient agreement
};

}  // namespace invex
