#include "invex/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "invex/prng.hpp"

namespace invex {

namespace {

Vector random_vector(std::size_t dim, Prng& rng, double scale) {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = scale * rng.normal();
    return v;
}

// Sample scales cycle over {1/3, 1, 3} so the certificates see points well
// inside and well outside the unit shell.
double scale_for(std::size_t index) {
    static const double scales[3] = {1.0 / 3.0, 1.0, 3.0};
    return scales[index % 3];
}

AugmentedPoint random_point(const InvexObjective& obj, Prng& rng, double scale) {
    return {random_vector(obj.map().input_dim(), rng, scale),
            random_vector(obj.map().output_dim(), rng, scale)};
}

// H v for unit v, by central differences on the gradient.
Vector hvp(const Objective& obj, const Vector& z, const Vector& unit_dir, double h) {
    Vector zp(z.size()), zm(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        zp[i] = z[i] + h * unit_dir[i];
        zm[i] = z[i] - h * unit_dir[i];
    }
    const Vector gp = obj.gradient(zp);
    const Vector gm = obj.gradient(zm);
    Vector out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = (gp[i] - gm[i]) / (2.0 * h);
    return out;
}

// Spectral norm of the Hessian at z: Lanczos on the FD Hessian-vector
// oracle with full reorthogonalization. The Hessian of the augmented
// objective is indefinite and often carries near-symmetric +/- extreme
// pairs, which stall plain power iteration; Lanczos resolves both spectrum
// ends and is exact once the Krylov space saturates the dimension.
double hessian_norm_at(const Objective& obj, const Vector& z, const Vector& start,
                       const Tolerances& tol) {
    const std::size_t dim = z.size();
    const std::size_t max_steps = std::min(dim, tol.power_max_iters);

    Vector v(start.entries());
    const double vn = norm(v);
    if (vn == 0.0) throw NoConvergence("hessian_norm_at: zero start vector");
    for (std::size_t i = 0; i < dim; ++i) v[i] /= vn;

    std::vector<Vector> basis{v};
    std::vector<double> alphas, betas;
    double prev_norm = -1.0;

    for (std::size_t j = 0; j < max_steps; ++j) {
        Vector w = hvp(obj, z, basis[j], tol.hvp_step);
        alphas.push_back(dot(basis[j], w));
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& q : basis) {
                const double c = dot(q, w);
                for (std::size_t i = 0; i < dim; ++i) w[i] -= c * q[i];
            }
        }
        const double beta = norm(w);

        // Extreme eigenvalues of the tridiagonal section so far.
        const std::size_t k = alphas.size();
        Matrix t(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            t(i, i) = alphas[i];
            if (i + 1 < k) {
                t(i, i + 1) = betas[i];
                t(i + 1, i) = betas[i];
            }
        }
        const auto [lo, hi] = extreme_eigs_sym(t);
        const double hnorm = std::max(std::abs(lo), std::abs(hi));

        if (beta <= 1e-12 * std::max(hnorm, 1.0)) return hnorm;  // invariant subspace
        if (k == dim) return hnorm;                              // full space spanned
        if (prev_norm >= 0.0 &&
            std::abs(hnorm - prev_norm) <= tol.power_rel * std::max(hnorm, 1e-300))
            return hnorm;
        prev_norm = hnorm;

        betas.push_back(beta);
        Vector next(dim);
        for (std::size_t i = 0; i < dim; ++i) next[i] = w[i] / beta;
        basis.push_back(std::move(next));
    }
    throw NoConvergence("hessian_norm_at: Krylov iteration did not converge");
}

}  // namespace

RidgeSolution ridge_closed_form(const Matrix& a, const Vector& b, double lambda) {
    if (!(lambda > 0.0)) throw DimensionMismatch("ridge_closed_form: lambda must be positive");
    if (a.rows() != b.size()) throw DimensionMismatch("ridge_closed_form: rows(A) != dim(b)");
    Matrix gram = aat(a);
    for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) += lambda * lambda;
    Vector t(b.size());
    try {
        t = spd_solve(gram, b);
    } catch (const NotSpd& e) {
        throw NotFullRowRank(std::string("ridge_closed_form: ") + e.what());
    }
    Vector x_star = tmatvec(a, t);
    Vector p_star = lambda * t;
    const double f = 0.5 * lambda * lambda * lambda * lambda * sum_sq(t);
    return {std::move(x_star), std::move(p_star), f};
}

RidgeLimitsReport ridge_limits_check(const Matrix& a, const Vector& b,
                                     const std::vector<double>& lambdas,
                                     const RidgeLimitsTols& tols) {
    if (lambdas.empty()) throw DimensionMismatch("ridge_limits_check: empty lambda list");
    RidgeLimitsReport rep;
    rep.lambda_lo = *std::min_element(lambdas.begin(), lambdas.end());
    rep.lambda_hi = *std::max_element(lambdas.begin(), lambdas.end());

    const Vector pinv_b = row_pinv_apply(a, b);
    const RidgeSolution lo = ridge_closed_form(a, b, rep.lambda_lo);
    const RidgeSolution hi = ridge_closed_form(a, b, rep.lambda_hi);

    rep.x_lo_rel_err = norm(lo.x_star - pinv_b) / std::max(norm(pinv_b), 1e-300);
    rep.f_lo = lo.f_at_x_star;
    rep.x_hi_norm = norm(hi.x_star);
    rep.f_hi = hi.f_at_x_star;
    const double half_bsq = 0.5 * sum_sq(b);
    rep.f_hi_half_rel_err = std::abs(rep.f_hi - half_bsq) / std::max(half_bsq, 1e-300);
    rep.f_hi_stated_rel_err = std::abs(rep.f_hi - 2.0 * half_bsq) / std::max(2.0 * half_bsq, 1e-300);
    rep.pass = rep.x_lo_rel_err <= tols.x_lo_rel && rep.f_lo <= tols.f_lo &&
               rep.x_hi_norm <= tols.x_hi && rep.f_hi_half_rel_err <= tols.f_hi_rel;
    return rep;
}

void to_json(nlohmann::json& j, const RidgeLimitsReport& r) {
    j = nlohmann::json{{"lambda_lo", r.lambda_lo},
                       {"lambda_hi", r.lambda_hi},
                       {"x_lo_rel_err", r.x_lo_rel_err},
                       {"f_lo", r.f_lo},
                       {"x_hi_norm", r.x_hi_norm},
                       {"f_hi", r.f_hi},
                       {"f_hi_half_rel_err", r.f_hi_half_rel_err},
                       {"f_hi_stated_rel_err", r.f_hi_stated_rel_err},
                       {"pass", r.pass}};
}

double hessian_norm(const Objective& obj, const Vector& z, std::uint64_t seed,
                    const Tolerances& tol) {
    Prng rng(seed);
    Vector v = random_vector(z.size(), rng, 1.0);
    return hessian_norm_at(obj, z, v, tol);
}

Matrix augmented_jacobian(const InvexObjective& obj, const Vector& x) {
    const Matrix j = obj.map().jacobian(x);
    const std::size_t n = j.rows(), d = j.cols();
    Matrix m(n, d + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) m(i, k) = j(i, k);
        m(i, d + i) = obj.lambda();
    }
    return m;
}

double pl_ratio(const InvexObjective& obj, const AugmentedPoint& pt) {
    const Vector grad = obj.gradient_at(pt);
    const double grad_sq = sum_sq(grad);
    if (grad_sq == 0.0) return 0.0;
    return 2.0 * obj.lambda() * obj.lambda() * obj.value_at(pt) / grad_sq;
}

double invexity_gap(const InvexObjective& obj, const AugmentedPoint& pt1,
                    const AugmentedPoint& pt2) {
    const Vector r1 = obj.residual(pt1);
    const Vector r2 = obj.residual(pt2);
    const Matrix m = augmented_jacobian(obj, pt2.x);
    const Vector eta = row_pinv_apply(m, r1 - r2);
    const Vector grad2 = obj.gradient_at(pt2);
    return 0.5 * sum_sq(r1) - 0.5 * sum_sq(r2) - dot(eta, grad2);
}

SmoothnessEstimate estimate_L(const InvexObjective& obj, const Vector& x0,
                              std::size_t sample_count, std::uint64_t seed,
                              const Tolerances& tol, double f_min) {
    if (sample_count < 1) throw DimensionMismatch("estimate_L: sample_count must be at least 1");
    const std::size_t d = obj.map().input_dim(), n = obj.map().output_dim();
    if (x0.size() != d) throw DimensionMismatch("estimate_L: x0 has wrong dimension");

    SmoothnessEstimate est;
    const double f_x0 = 0.5 * sum_sq(obj.map().value(x0));
    est.delta0 = std::max(f_x0 - f_min, 0.0);
    est.R = 2.0 * std::sqrt(2.0 * est.delta0) / obj.lambda();
    est.sample_count = sample_count;

    const Vector z0 = obj.join(augmented_start(obj.map(), x0));
    Prng rng(seed);

    std::vector<Vector> zs;
    zs.reserve(sample_count + 1);
    zs.push_back(z0);
    for (std::size_t i = 0; i < sample_count; ++i) {
        Prng stream = rng.split(i + 1);
        Vector dir = random_vector(d + n, stream, 1.0);
        const double dn = norm(dir);
        const double radius = est.R * stream.uniform01();
        Vector z(d + n);
        for (std::size_t k = 0; k < d + n; ++k)
            z[k] = z0[k] + (dn > 0.0 ? radius * dir[k] / dn : 0.0);
        zs.push_back(std::move(z));
    }

    Prng start_stream = rng.split(0);
    Vector v = random_vector(d + n, start_stream, 1.0);
    est.hessian_norms.reserve(zs.size());
    for (const Vector& z : zs) est.hessian_norms.push_back(hessian_norm_at(obj, z, v, tol));
    est.L_hat = *std::max_element(est.hessian_norms.begin(), est.hessian_norms.end());

    // Empirical Lipschitz constants of g and J_g over the sampled x's.
    std::vector<Vector> gs;
    std::vector<Matrix> js;
    gs.reserve(zs.size());
    js.reserve(zs.size());
    for (const Vector& z : zs) {
        const Vector x = obj.split(z).x;
        gs.push_back(obj.map().value(x));
        js.push_back(obj.map().jacobian(x));
    }
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const Vector xi = obj.split(zs[i]).x;
        for (std::size_t k = i + 1; k < zs.size(); ++k) {
            const Vector xk = obj.split(zs[k]).x;
            const double dx = norm(xi - xk);
            if (dx <= 1e-9) continue;
            est.M_hat = std::max(est.M_hat, norm(gs[i] - gs[k]) / dx);
            est.N_hat = std::max(est.N_hat, spectral_norm(js[i] - js[k]) / dx);
        }
    }
    return est;
}

RateCheck rate_check(const IterationTrace& trace, double L_hat, double slack) {
    if (trace.algo != OptimAlgo::Gd) throw InvalidTrace("rate_check: requires a GD trace");
    if (trace.lambda <= 0.0) throw InvalidTrace("rate_check: requires an augmented-objective trace");
    if (!(L_hat > 0.0)) throw InvalidTrace("rate_check: nonpositive smoothness constant");

    const double fhat0 = trace.records.front().fhat;
    const double q = trace.lambda * trace.lambda / L_hat;
    RateCheck out{true, true, 0.0};
    if (fhat0 <= 0.0) return out;

    double bound = fhat0;
    double prev = fhat0;
    for (const TraceRecord& rec : trace.records) {
        const double over = (rec.fhat - bound) / fhat0;
        out.worst_slack = std::max(out.worst_slack, over);
        if (rec.fhat > prev) out.monotone = false;
        prev = rec.fhat;
        bound *= (1.0 - q);
    }
    out.pass = out.monotone && out.worst_slack <= slack;
    return out;
}

PathCheck path_check(const IterationTrace& trace, double R) {
    PathCheck out;
    out.path_len = trace.total_path_length();
    out.budget = R;
    out.pass = out.path_len <= R;
    return out;
}

BiasBoundCheck bias_bound_check(const IterationTrace& trace, const SmoothnessEstimate& est,
                                double lambda) {
    if (trace.algo != OptimAlgo::Gd) throw InvalidTrace("bias_bound_check: requires a GD trace");
    if (trace.lambda != lambda)
        throw InvalidTrace("bias_bound_check: lambda does not match the trace");
    if (trace.records.front().p_norm != 0.0)
        throw InvalidTrace("bias_bound_check: trace must start at p = 0");
    if (trace.step_size > (1.0 + 1e-9) / est.L_hat)
        throw InvalidTrace("bias_bound_check: step size exceeds 1/L_hat");

    BiasBoundCheck out;
    out.note = "bound evaluated with the lambda/L factor as printed; "
               "the convergence rate itself carries lambda^2/L";
    const double ratio = 1.0 - lambda / est.L_hat;
    if (ratio < 0.0) {
        out.applicable = false;
        out.pass = false;
        return out;
    }
    out.applicable = true;
    const double rho = std::sqrt(ratio);
    const double g0 = trace.records.front().g_norm;
    out.envelope = (2.0 + rho) * g0;
    if (g0 <= 0.0) {
        out.pass = true;
        out.envelope_pass = true;
        return out;
    }

    double decay = 1.0;  // rho^t
    double worst = std::numeric_limits<double>::infinity();
    bool envelope_ok = true;
    for (const TraceRecord& rec : trace.records) {
        const double rhs = decay * g0 + (1.0 + rho) * g0;
        worst = std::min(worst, (rhs - rec.g_norm) / g0);
        if (rec.g_norm > out.envelope) envelope_ok = false;
        decay *= rho;
    }
    out.worst_margin = worst;
    out.pass = worst >= 0.0;
    out.envelope_pass = envelope_ok;
    return out;
}

EigFloorCheck eig_floor_check(const DifferentiableMap& map, double lambda, std::size_t samples,
                              std::uint64_t seed, double rel_slack) {
    EigFloorCheck out;
    out.samples = samples;
    out.worst_rel_slack = std::numeric_limits<double>::infinity();
    Prng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        Prng stream = rng.split(i);
        const Vector x = random_vector(map.input_dim(), stream, scale_for(i));
        const Matrix j = map.jacobian(x);
        const SymEigen eig = sym_eigen(aat(j));
        Vector vmin(j.rows());
        for (std::size_t k = 0; k < j.rows(); ++k) vmin[k] = eig.vectors(k, 0);
        const double vsq = sum_sq(vmin);
        const double floor_est = (sum_sq(tmatvec(j, vmin)) + lambda * lambda * vsq) / vsq;
        out.worst_rel_slack = std::min(out.worst_rel_slack, floor_est / (lambda * lambda) - 1.0);
    }
    out.pass = out.worst_rel_slack >= -rel_slack;
    return out;
}

bool CertificateReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const auto& kv) { return kv.second.ok(); });
}

namespace {

std::string status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::NotApplicable: return "not_applicable";
        case CheckStatus::Error: return "error";
    }
    return "error";
}

CheckStatus status_from_name(const std::string& s) {
    if (s == "pass") return CheckStatus::Pass;
    if (s == "fail") return CheckStatus::Fail;
    if (s == "not_applicable") return CheckStatus::NotApplicable;
    if (s == "error") return CheckStatus::Error;
    throw ConfigError("unknown check status '" + s + "'");
}

}  // namespace

void to_json(nlohmann::json& j, const CheckResult& r) {
    j = nlohmann::json{{"status", status_name(r.status)},
                       {"worst_slack", r.worst_slack},
                       {"samples", r.samples},
                       {"detail", r.detail}};
}

void from_json(const nlohmann::json& j, CheckResult& r) {
    r.status = status_from_name(j.at("status").get<std::string>());
    r.worst_slack = j.at("worst_slack").get<double>();
    r.samples = j.at("samples").get<std::size_t>();
    r.detail = j.at("detail").get<std::string>();
}

void to_json(nlohmann::json& j, const CertificateReport& r) {
    j = nlohmann::json{{"model", r.model_name},
                       {"lambda", r.lambda},
                       {"seed", r.seed},
                       {"checks", r.checks}};
}

void from_json(const nlohmann::json& j, CertificateReport& r) {
    r.model_name = j.at("model").get<std::string>();
    r.lambda = j.at("lambda").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.checks = j.at("checks").get<std::map<std::string, CheckResult>>();
}

CertificateReport certify(const InvexObjective& obj, const Vector& x0, const CertifyConfig& cfg,
                          const std::string& model_name) {
    CertificateReport report;
    report.model_name = model_name;
    report.lambda = obj.lambda();
    report.seed = cfg.seed;
    Prng rng(cfg.seed);

    // PL inequality over random augmented points.
    {
        double worst = 0.0;
        for (std::size_t i = 0; i < cfg.pl_samples; ++i) {
            Prng stream = rng.split(0x100000 + i);
            worst = std::max(worst, pl_ratio(obj, random_point(obj, stream, scale_for(i))));
        }
        CheckResult res;
        res.samples = cfg.pl_samples;
        res.worst_slack = worst - 1.0;
        res.status = worst <= 1.0 + cfg.tol.pl_slack ? CheckStatus::Pass : CheckStatus::Fail;
        res.detail = "max PL ratio over samples";
        report.checks["pl"] = res;
    }

    // Invexity gap over random pairs, slack normalized by 1 + |f1| + |f2|.
    {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cfg.pair_samples; ++i) {
            Prng stream = rng.split(0x200000 + i);
            const AugmentedPoint pt1 = random_point(obj, stream, scale_for(i));
            const AugmentedPoint pt2 = random_point(obj, stream, scale_for(i + 1));
            const double gap = invexity_gap(obj, pt1, pt2);
            const double scale = 1.0 + std::abs(obj.value_at(pt1)) + std::abs(obj.value_at(pt2));
            worst = std::min(worst, gap / scale);
        }
        CheckResult res;
        res.samples = cfg.pair_samples;
        res.worst_slack = worst;
        res.status = worst >= -cfg.tol.invexity_slack ? CheckStatus::Pass : CheckStatus::Fail;
        res.detail = "min normalized invexity gap over sample pairs";
        report.checks["invexity"] = res;
    }

    // Eigenvalue floor of the augmented Gram matrix.
    {
        const EigFloorCheck ef = eig_floor_check(obj.map(), obj.lambda(), cfg.eig_samples,
                                                 rng.split(0x300000).seed(), cfg.tol.eig_floor_slack);
        CheckResult res;
        res.samples = ef.samples;
        res.worst_slack = ef.worst_rel_slack;
        res.status = ef.pass ? CheckStatus::Pass : CheckStatus::Fail;
        res.detail = "min of lambda_min(J J^T + l^2 I)/l^2 - 1 over samples";
        report.checks["eig_floor"] = res;
    }

    // Certification trace: GD with step 1/L_hat from (x0, 0).
    const auto mark_trace_checks = [&report](CheckStatus status, const std::string& why) {
        for (const char* name : {"rate", "path_length", "bias_bound", "ridge_equivalence"}) {
            CheckResult res;
            res.status = status;
            res.detail = why;
            report.checks[name] = res;
        }
    };
    try {
        const SmoothnessEstimate est = estimate_L(obj, x0, cfg.smoothness_samples,
                                                  rng.split(0x400000).seed(), cfg.tol, cfg.f_min);
        GdConfig gd;
        gd.step_size = cfg.step_override > 0.0 ? cfg.step_override : 1.0 / est.L_hat;
        gd.max_iters = cfg.gd_budget;
        gd.grad_tol = cfg.grad_tol;
        const IterationTrace trace = gd_run(obj, augmented_start(obj.map(), x0), gd);

        {
            const RateCheck rc = rate_check(trace, est.L_hat, cfg.tol.rate_slack);
            CheckResult res;
            res.samples = trace.records.size();
            res.worst_slack = rc.worst_slack;
            res.status = rc.pass ? CheckStatus::Pass : CheckStatus::Fail;
            res.detail = rc.monotone ? "max normalized overshoot of the linear-rate bound"
                                     : "descent not monotone";
            report.checks["rate"] = res;
        }
        {
            const PathCheck pc = path_check(trace, est.R);
            CheckResult res;
            res.samples = trace.records.size();
            res.worst_slack = pc.path_len - pc.budget;
            res.status = pc.pass ? CheckStatus::Pass : CheckStatus::Fail;
            res.detail = "path length minus budget R";
            report.checks["path_length"] = res;
        }
        {
            const BiasBoundCheck bc = bias_bound_check(trace, est, obj.lambda());
            CheckResult res;
            res.samples = trace.records.size();
            res.worst_slack = bc.worst_margin;
            res.status = bc.applicable && bc.pass ? CheckStatus::Pass : CheckStatus::Fail;
            res.detail = bc.note;
            report.checks["bias_bound"] = res;
        }
        {
            CheckResult res;
            const auto* affine = dynamic_cast<const AffineMap*>(&obj.map());
            if (affine == nullptr) {
                res.status = CheckStatus::NotApplicable;
                res.detail = "closed-form comparison applies to affine residuals only";
            } else {
                const RidgeSolution ridge =
                    ridge_closed_form(affine->a(), affine->b(), obj.lambda());
                const AugmentedPoint fin = obj.split(trace.final_point);
                const double x_err = inf_norm(fin.x - ridge.x_star);

                // p at the limit must match (b - A x)/lambda.
                const Vector gx = affine->value(fin.x);
                Vector p_expect(gx.size());
                for (std::size_t i = 0; i < gx.size(); ++i)
                    p_expect[i] = -gx[i] / obj.lambda();
                const double p_err = norm(fin.p - p_expect);
                const double p_tol = cfg.tol.ridge_p_consistency * norm(affine->b());

                res.samples = trace.records.size();
                res.worst_slack = x_err;
                res.status = x_err <= cfg.tol.ridge_equiv_inf && p_err <= p_tol
                                 ? CheckStatus::Pass
                                 : CheckStatus::Fail;
                res.detail = "inf-norm gap to the ridge solution; p-consistency error " +
                             std::to_string(p_err);
            }
            report.checks["ridge_equivalence"] = res;
        }
    } catch (const NonFinite& e) {
        mark_trace_checks(CheckStatus::Error, std::string("NonFinite: ") + e.what());
    } catch (const NoConvergence& e) {
        mark_trace_checks(CheckStatus::Error, std::string("NoConvergence: ") + e.what());
    }
    return report;
}

}  // namespace invex
