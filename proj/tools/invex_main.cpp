#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invex/experiments.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<double> lambdas;
    std::uint64_t n = 0, d = 0, iters = 0;
    std::string step_size;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config, "Config file (flat key = value, sections per command)");
    cmd->add_option("--out", flags.out, "Output directory");
    cmd->add_option("--seed", flags.seed, "Dataset / sampling seed")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--lambda", flags.lambdas, "Regularization weight(s); repeatable");
    cmd->add_option("--n", flags.n, "Residual count (dataset size)");
    cmd->add_option("--d", flags.d, "Parameter / feature dimension");
    cmd->add_option("--iters", flags.iters, "Iteration budget");
    cmd->add_option("--step-size", flags.step_size, "Step size ('auto' or a positive real)");
}

invex::HarnessConfig merge(const std::string& command, const CommonFlags& flags) {
    invex::HarnessConfig cfg = invex::default_config(command);
    if (!flags.config.empty()) invex::apply_config_file(cfg, flags.config, command);
    if (!flags.out.empty()) cfg.out_dir = flags.out;
    if (flags.seed_set) cfg.model.seed = flags.seed;
    if (!flags.lambdas.empty()) cfg.lambdas = flags.lambdas;
    if (flags.n > 0) cfg.model.n = flags.n;
    if (flags.d > 0) cfg.model.d = flags.d;
    if (flags.iters > 0) cfg.optimizer.iters = flags.iters;
    if (!flags.step_size.empty())
        cfg.optimizer.step_size = flags.step_size == "auto" ? 0.0 : std::stod(flags.step_size);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invexlsq: invex regularization of nonlinear least squares"};
    app.require_subcommand(1);

    CommonFlags verify_flags, ridge_flags, sweep_flags, compare_flags;
    CLI::App* verify = app.add_subcommand(
        "verify", "Run the full certificate suite on the bundled models");
    add_common(verify, verify_flags);
    CLI::App* ridge = app.add_subcommand(
        "ridge-demo", "GD on the augmented objective vs the ridge closed form");
    add_common(ridge, ridge_flags);
    CLI::App* sweep = app.add_subcommand(
        "sweep-sigmoid", "Lambda sweep on the sigmoid classification task");
    add_common(sweep, sweep_flags);
    CLI::App* compare = app.add_subcommand(
        "compare-l2", "Invex vs l2 vs unregularized on one model");
    add_common(compare, compare_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return invex::cmd_verify(merge("verify", verify_flags)).exit_code;
        if (ridge->parsed())
            return invex::cmd_ridge_demo(merge("ridge-demo", ridge_flags)).exit_code;
        if (sweep->parsed())
            return invex::cmd_sweep_sigmoid(merge("sweep-sigmoid", sweep_flags)).exit_code;
        if (compare->parsed())
            return invex::cmd_compare_l2(merge("compare-l2", compare_flags)).exit_code;
    } catch (const invex::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
