#include "invex/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "invex/prng.hpp"

namespace invex {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const char* reason_name(StopReason r) {
    return r == StopReason::GradTol ? "grad_tol" : "max_iters";
}

nlohmann::json run_summary_json(const IterationTrace& trace, double wall_ms) {
    const TraceRecord& fin = trace.final_record();
    return {{"final_fhat", fin.fhat},     {"final_f", fin.f},
            {"final_g_norm", fin.g_norm}, {"final_grad_norm", fin.grad_norm},
            {"iterations", fin.t},        {"path_len", fin.path_len},
            {"reason", reason_name(trace.reason)}, {"wall_ms", wall_ms}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty() || rows.front().empty()) throw ConfigError("dataset: matrix A is empty");
    const std::size_t n = rows.size(), d = rows.front().size();
    std::vector<double> flat;
    flat.reserve(n * d);
    for (const auto& row : rows) {
        if (row.size() != d) throw ConfigError("dataset: ragged matrix A");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return Matrix(n, d, std::move(flat));
}

Vector vector_of_normals(std::size_t dim, Prng rng, double scale) {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = scale * rng.normal();
    return v;
}

std::vector<double> default_lambdas(const std::string& command) {
    if (command == "verify") return {0.01, 0.1, 1.0};
    if (command == "ridge-demo") return {0.1, 1.0, 10.0};
    if (command == "sweep-sigmoid") return {0.1, 0.05, 0.01};
    return {0.0, 0.01, 0.1};  // compare-l2
}

}  // namespace

HarnessConfig default_config(const std::string& command) {
    HarnessConfig cfg;
    cfg.lambdas = default_lambdas(command);
    if (command == "verify") {
        cfg.model.seed = 1;
    } else if (command == "ridge-demo") {
        cfg.model.kind = "affine";
        cfg.model.n = 20;
        cfg.model.d = 50;
        cfg.model.seed = 7;
        cfg.optimizer.iters = 200000;
    } else if (command == "sweep-sigmoid") {
        cfg.model.kind = "sigmoid";
        cfg.model.n = 64;
        cfg.model.d = 8;
        cfg.model.seed = 42;
        cfg.optimizer.iters = 60000;
        cfg.optimizer.grad_tol = 0.0;  // fixed budget, rows aligned across lambdas
    } else if (command == "compare-l2") {
        cfg.model.kind = "sigmoid";
        cfg.model.n = 64;
        cfg.model.d = 8;
        cfg.model.seed = 42;
        cfg.optimizer.kind = "adam";
        cfg.optimizer.iters = 2000;
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }
    return cfg;
}

std::shared_ptr<DifferentiableMap> build_model(const ModelSpec& spec) {
    if (!spec.dataset.empty()) {
        std::ifstream in(spec.dataset);
        if (!in) throw ConfigError(spec.dataset + ": cannot open dataset file");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(spec.dataset + ": " + e.what());
        }
        Matrix a = matrix_from_json(j.at("A"));
        Vector b(j.at("b").get<std::vector<double>>());
        if (spec.kind == "affine") return std::make_shared<AffineMap>(std::move(a), std::move(b));
        if (spec.kind == "sigmoid")
            return std::make_shared<SigmoidClassifierMap>(std::move(a), std::move(b));
        return std::make_shared<TinyMlpMap>(a.cols(), spec.hidden, std::move(a), std::move(b));
    }
    if (spec.n < 1 || spec.d < 1) throw ConfigError("model: n and d must be at least 1");
    if (spec.kind == "affine")
        return std::make_shared<AffineMap>(synth_affine(spec.n, spec.d, spec.seed));
    if (spec.kind == "sigmoid")
        return std::make_shared<SigmoidClassifierMap>(
            synth_classification(spec.n, spec.d, spec.seed));
    if (spec.kind == "mlp")
        return std::make_shared<TinyMlpMap>(synth_mlp(spec.n, spec.d, spec.hidden, spec.seed));
    throw ConfigError("model: unknown kind '" + spec.kind + "'");
}

std::vector<BundledModel> bundled_models(std::uint64_t seed) {
    Prng base(seed);
    std::vector<BundledModel> models;
    models.push_back({"affine-20x50",
                      std::make_shared<AffineMap>(synth_affine(20, 50, base.split(1).seed())),
                      Vector(50)});
    models.push_back({"sigmoid-64x8",
                      std::make_shared<SigmoidClassifierMap>(
                          synth_classification(64, 8, base.split(2).seed())),
                      Vector(8)});
    auto mlp = std::make_shared<TinyMlpMap>(synth_mlp(32, 4, 8, base.split(3).seed()));
    Vector mlp_x0 = vector_of_normals(mlp->input_dim(), base.split(4), 0.5);
    models.push_back({"mlp-h8-n32", std::move(mlp), std::move(mlp_x0)});
    return models;
}

CommandResult cmd_verify(const HarnessConfig& cfg) {
    const std::vector<BundledModel> models = bundled_models(cfg.model.seed);
    Prng base(cfg.model.seed);

    nlohmann::json entries = nlohmann::json::array();
    bool all_ok = true;
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        const BundledModel& model = models[mi];
        for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
            const double lambda = cfg.lambdas[li];
            if (!(lambda > 0.0)) throw ConfigError("verify: lambda values must be positive");
            const InvexObjective obj(*model.map, lambda);

            CertifyConfig cc;
            cc.pl_samples = cfg.pl_samples;
            cc.pair_samples = cfg.pair_samples;
            cc.eig_samples = cfg.eig_samples;
            cc.smoothness_samples = cfg.smoothness_samples;
            cc.gd_budget = cfg.gd_budget;
            cc.grad_tol = cfg.optimizer.grad_tol;
            cc.seed = base.split(0x600000 + mi * 64 + li).seed();
            cc.f_min = cfg.f_min;
            cc.step_override = cfg.optimizer.step_size;
            cc.tol = cfg.tol;

            const auto t0 = Clock::now();
            const CertificateReport report = certify(obj, model.x0, cc, model.name);
            const double wall = ms_since(t0);
            all_ok = all_ok && report.all_pass();

            std::string line = model.name + " lambda=" + format_g17(lambda) + ":";
            for (const auto& [name, res] : report.checks) {
                line += " " + name + "=";
                switch (res.status) {
                    case CheckStatus::Pass: line += "pass"; break;
                    case CheckStatus::Fail: line += "FAIL"; break;
                    case CheckStatus::NotApplicable: line += "n/a"; break;
                    case CheckStatus::Error: line += "ERROR"; break;
                }
            }
            std::puts(line.c_str());
            entries.push_back({{"certificate", report}, {"wall_ms", wall}});
        }
    }

    // Limiting behaviour of the ridge solution on the bundled linear system.
    const auto* affine = dynamic_cast<const AffineMap*>(models.front().map.get());
    const RidgeLimitsReport limits = ridge_limits_check(affine->a(), affine->b(), {1e-6, 1e6});
    all_ok = all_ok && limits.pass;
    std::printf("ridge limits: %s (f(x*) at large lambda = %s, halved-convention rel err %.3g; "
                "distance to the unhalved |b|^2 recorded as %.3g)\n",
                limits.pass ? "pass" : "FAIL", format_g17(limits.f_hi).c_str(),
                limits.f_hi_half_rel_err, limits.f_hi_stated_rel_err);

    nlohmann::json summary{{"command", "verify"},
                           {"entries", entries},
                           {"ridge_limits", limits},
                           {"all_pass", all_ok}};
    write_file_atomic(std::filesystem::path(cfg.out_dir) / "certificates.json",
                      summary.dump(2) + "\n");
    std::printf("verify: %s\n", all_ok ? "all checks passed" : "FAILURES present");
    return {all_ok ? 0 : 1, std::move(summary)};
}

CommandResult cmd_ridge_demo(const HarnessConfig& cfg) {
    if (cfg.model.kind != "affine") throw ConfigError("ridge-demo: model must be affine");
    const auto map = build_model(cfg.model);
    const auto& affine = dynamic_cast<const AffineMap&>(*map);
    if (affine.output_dim() > affine.input_dim())
        throw ConfigError("ridge-demo: requires an under-determined system (n <= d)");

    const double sigma_max_sq = extreme_eigs_sym(aat(affine.a())).second;
    const Vector x0(affine.input_dim());

    std::string csv = kTraceCsvHeader;
    csv += '\n';
    nlohmann::json rows = nlohmann::json::array();
    bool all_ok = true;
    for (const double lambda : cfg.lambdas) {
        if (!(lambda > 0.0)) throw ConfigError("ridge-demo: lambda values must be positive");
        const InvexObjective obj(affine, lambda);

        GdConfig gd;
        gd.step_size = cfg.optimizer.step_size > 0.0
                           ? cfg.optimizer.step_size
                           : 0.9 / (sigma_max_sq + lambda * lambda);
        gd.max_iters = cfg.optimizer.iters;
        gd.grad_tol = cfg.optimizer.grad_tol;

        const auto t0 = Clock::now();
        const IterationTrace trace = gd_run(obj, augmented_start(affine, x0), gd);
        const double wall = ms_since(t0);
        append_trace_rows(csv, lambda, trace);

        const RidgeSolution ridge = ridge_closed_form(affine.a(), affine.b(), lambda);
        const AugmentedPoint fin = obj.split(trace.final_point);
        const double x_err = inf_norm(fin.x - ridge.x_star);
        const Vector gx = affine.value(fin.x);
        double p_err_sq = 0.0;
        for (std::size_t i = 0; i < gx.size(); ++i) {
            const double diff = fin.p[i] + gx[i] / lambda;
            p_err_sq += diff * diff;
        }
        const bool ok = x_err <= cfg.tol.ridge_equiv_inf;
        all_ok = all_ok && ok;

        nlohmann::json row = run_summary_json(trace, wall);
        row["lambda"] = lambda;
        row["step_size"] = *gd.step_size;
        row["x_inf_err_vs_ridge"] = x_err;
        row["x_norm"] = norm(fin.x);
        row["p_consistency_err"] = std::sqrt(p_err_sq);
        row["f_at_ridge_solution"] = ridge.f_at_x_star;
        row["pass"] = ok;
        rows.push_back(std::move(row));
        std::printf("ridge-demo lambda=%s: |x - x*|_inf = %.3e (%s)\n", format_g17(lambda).c_str(),
                    x_err, ok ? "pass" : "FAIL");
    }

    const std::filesystem::path out(cfg.out_dir);
    write_file_atomic(out / "ridge_demo.csv", csv);
    nlohmann::json summary{{"command", "ridge-demo"},
                           {"model", {{"n", affine.output_dim()}, {"d", affine.input_dim()},
                                      {"seed", cfg.model.seed}}},
                           {"runs", rows},
                           {"all_pass", all_ok}};
    write_file_atomic(out / "ridge_demo.json", summary.dump(2) + "\n");
    return {all_ok ? 0 : 1, std::move(summary)};
}

CommandResult cmd_sweep_sigmoid(const HarnessConfig& cfg) {
    if (cfg.lambdas.empty()) throw ConfigError("sweep-sigmoid: lambda list is empty");
    const auto map = build_model(cfg.model);
    const Vector x0(map->input_dim());
    Prng base(cfg.model.seed);

    // One step size shared by every run: 0.9 over the largest smoothness
    // estimate across the swept lambdas.
    double alpha = cfg.optimizer.step_size;
    nlohmann::json lhat_json = nlohmann::json::array();
    if (!(alpha > 0.0)) {
        double worst_L = 0.0;
        for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
            if (!(cfg.lambdas[li] > 0.0))
                throw ConfigError("sweep-sigmoid: lambda values must be positive");
            const InvexObjective obj(*map, cfg.lambdas[li]);
            const SmoothnessEstimate est =
                estimate_L(obj, x0, cfg.smoothness_samples, base.split(0x700000 + li).seed(),
                           cfg.tol, cfg.f_min);
            worst_L = std::max(worst_L, est.L_hat);
            lhat_json.push_back({{"lambda", cfg.lambdas[li]}, {"L_hat", est.L_hat}});
        }
        alpha = 0.9 / worst_L;
    }

    std::string csv = kTraceCsvHeader;
    csv += '\n';
    struct Final {
        double lambda, fhat, f;
        bool monotone;
    };
    std::vector<Final> finals;
    nlohmann::json rows = nlohmann::json::array();
    for (const double lambda : cfg.lambdas) {
        const InvexObjective obj(*map, lambda);
        GdConfig gd;
        gd.step_size = alpha;
        gd.max_iters = cfg.optimizer.iters;
        gd.grad_tol = cfg.optimizer.grad_tol;

        const auto t0 = Clock::now();
        const IterationTrace trace = gd_run(obj, augmented_start(*map, x0), gd);
        const double wall = ms_since(t0);
        append_trace_rows(csv, lambda, trace);

        bool monotone = true;
        for (std::size_t t = 1; t < trace.records.size(); ++t)
            if (trace.records[t].fhat > trace.records[t - 1].fhat) monotone = false;

        const TraceRecord& fin = trace.final_record();
        finals.push_back({lambda, fin.fhat, fin.f, monotone});
        nlohmann::json row = run_summary_json(trace, wall);
        row["lambda"] = lambda;
        row["monotone"] = monotone;
        rows.push_back(std::move(row));
        std::printf("sweep lambda=%s: fhat=%.3e f=%.3e%s\n", format_g17(lambda).c_str(), fin.fhat,
                    fin.f, monotone ? "" : " (NOT monotone)");
    }

    // Qualitative trade-off: by decreasing lambda, fhat at the budget must
    // strictly increase and the plain objective strictly decrease.
    std::vector<Final> by_lambda = finals;
    std::sort(by_lambda.begin(), by_lambda.end(),
              [](const Final& a, const Final& b) { return a.lambda > b.lambda; });
    bool fhat_ordering = true, f_ordering = true, all_monotone = true;
    for (std::size_t i = 0; i + 1 < by_lambda.size(); ++i) {
        if (!(by_lambda[i].fhat < by_lambda[i + 1].fhat)) fhat_ordering = false;
        if (!(by_lambda[i].f > by_lambda[i + 1].f)) f_ordering = false;
    }
    for (const Final& f : finals) all_monotone = all_monotone && f.monotone;
    const double largest_lambda_fhat = by_lambda.front().fhat;
    const bool interpolated = largest_lambda_fhat <= 1e-10;
    const bool all_ok = fhat_ordering && f_ordering && all_monotone && interpolated;

    const std::filesystem::path out(cfg.out_dir);
    write_file_atomic(out / "sweep_sigmoid.csv", csv);
    nlohmann::json summary{{"command", "sweep-sigmoid"},
                           {"step_size", alpha},
                           {"smoothness", lhat_json},
                           {"runs", rows},
                           {"fhat_increases_as_lambda_decreases", fhat_ordering},
                           {"f_decreases_as_lambda_decreases", f_ordering},
                           {"all_monotone", all_monotone},
                           {"largest_lambda_final_fhat", largest_lambda_fhat},
                           {"interpolated", interpolated},
                           {"all_pass", all_ok}};
    write_file_atomic(out / "sweep_sigmoid.json", summary.dump(2) + "\n");
    std::printf("sweep-sigmoid: orderings %s, interpolation fhat=%.3e\n",
                fhat_ordering && f_ordering ? "hold" : "VIOLATED", largest_lambda_fhat);
    return {all_ok ? 0 : 1, std::move(summary)};
}

CommandResult cmd_compare_l2(const HarnessConfig& cfg) {
    if (cfg.lambdas.empty()) throw ConfigError("compare-l2: lambda list is empty");
    const auto map = build_model(cfg.model);
    Prng base(cfg.model.seed);
    const Vector x0 = vector_of_normals(map->input_dim(), base.split(100), 0.5);

    std::string compare_csv = "mode,lambda,t,f\n";
    nlohmann::json rows = nlohmann::json::array();
    const std::filesystem::path out(cfg.out_dir);
    std::filesystem::create_directories(out);

    // records of the lambda = 0 runs per mode, for the coincidence check
    std::vector<std::vector<TraceRecord>> zero_records;

    for (const std::string mode : {"invex", "l2"}) {
        for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
            const double lambda = cfg.lambdas[li];
            if (lambda < 0.0) throw ConfigError("compare-l2: lambda values must be nonnegative");

            const PlainObjective plain(*map);
            std::unique_ptr<InvexObjective> invex_obj;
            std::unique_ptr<L2Objective> l2_obj;
            const Objective* obj = &plain;
            Vector start = x0;
            if (lambda > 0.0 && mode == "invex") {
                invex_obj = std::make_unique<InvexObjective>(*map, lambda);
                obj = invex_obj.get();
                start = invex_obj->join(augmented_start(*map, x0));
            } else if (lambda > 0.0 && mode == "l2") {
                l2_obj = std::make_unique<L2Objective>(*map, lambda);
                obj = l2_obj.get();
            }

            const auto t0 = Clock::now();
            IterationTrace trace = [&] {
                if (cfg.optimizer.kind == "adam") {
                    AdamConfig ac;
                    ac.step_size = cfg.optimizer.step_size > 0.0 ? cfg.optimizer.step_size : 1e-3;
                    ac.beta1 = cfg.optimizer.adam_beta1;
                    ac.beta2 = cfg.optimizer.adam_beta2;
                    ac.eps = cfg.optimizer.adam_eps;
                    ac.max_iters = cfg.optimizer.iters;
                    return adam_run(*obj, start, ac);
                }
                GdConfig gd;
                if (cfg.optimizer.step_size > 0.0) {
                    gd.step_size = cfg.optimizer.step_size;
                } else if (dynamic_cast<const InvexObjective*>(obj) == nullptr) {
                    // no ball-based estimator for the baselines; use the local
                    // curvature at the start
                    gd.step_size = 0.9 / hessian_norm(*obj, start, base.split(200 + li).seed(),
                                                      cfg.tol);
                }
                gd.max_iters = cfg.optimizer.iters;
                gd.grad_tol = cfg.optimizer.grad_tol;
                return gd_run(*obj, start, gd);
            }();
            const double wall = ms_since(t0);

            for (const TraceRecord& r : trace.records) {
                compare_csv += mode;
                compare_csv += ',';
                compare_csv += format_g17(lambda);
                compare_csv += ',';
                compare_csv += std::to_string(r.t);
                compare_csv += ',';
                compare_csv += format_g17(r.f);
                compare_csv += '\n';
            }
            write_file_atomic(out / ("trace_" + mode + "_" + std::to_string(li) + ".csv"),
                              trace_csv(lambda, trace));

            nlohmann::json row = run_summary_json(trace, wall);
            row["mode"] = mode;
            row["lambda"] = lambda;
            row["initial_f"] = trace.records.front().f;
            rows.push_back(std::move(row));
            if (lambda == 0.0) zero_records.push_back(trace.records);
        }
    }

    bool lambda0_identical = true;
    if (zero_records.size() == 2) {
        const auto& a = zero_records[0];
        const auto& b = zero_records[1];
        lambda0_identical = a.size() == b.size();
        for (std::size_t t = 0; lambda0_identical && t < a.size(); ++t) {
            lambda0_identical = a[t].fhat == b[t].fhat && a[t].f == b[t].f &&
                                a[t].grad_norm == b[t].grad_norm &&
                                a[t].step_len == b[t].step_len && a[t].path_len == b[t].path_len;
        }
    }

    // final plain objective, invex vs l2, per positive lambda
    nlohmann::json factors = nlohmann::json::array();
    for (const double lambda : cfg.lambdas) {
        if (!(lambda > 0.0)) continue;
        double f_invex = 0.0, f_l2 = 0.0;
        for (const auto& row : rows) {
            if (row["lambda"].get<double>() != lambda) continue;
            if (row["mode"] == "invex") f_invex = row["final_f"].get<double>();
            if (row["mode"] == "l2") f_l2 = row["final_f"].get<double>();
        }
        factors.push_back({{"lambda", lambda},
                           {"invex_final_f", f_invex},
                           {"l2_final_f", f_l2},
                           {"invex_over_l2", f_l2 > 0.0 ? f_invex / f_l2 : 0.0}});
    }

    const bool all_ok = lambda0_identical;
    write_file_atomic(out / "compare_l2.csv", compare_csv);
    nlohmann::json summary{{"command", "compare-l2"},
                           {"optimizer", cfg.optimizer.kind},
                           {"runs", rows},
                           {"final_f_invex_vs_l2", factors},
                           {"lambda0_modes_identical", lambda0_identical},
                           {"all_pass", all_ok}};
    write_file_atomic(out / "compare_l2.json", summary.dump(2) + "\n");
    std::printf("compare-l2: lambda=0 modes %s\n",
                lambda0_identical ? "coincide exactly" : "DIVERGED");
    return {all_ok ? 0 : 1, std::move(summary)};
}

}  // namespace invex
