#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "invex/tolerances.hpp"

namespace invex {

struct ModelSpec {
    std::string kind = "sigmoid";  // sigmoid | affine | mlp
    std::size_t n = 64;            // residual count (dataset size)
    std::size_t d = 8;             // parameter / feature dimension
    std::size_t hidden = 8;        // mlp width
    std::uint64_t seed = 42;
    std::string dataset;           // optional JSON file with explicit A, b
};

struct OptimizerSpec {
    std::string kind = "gd";  // gd | adam
    double step_size = 0.0;   // 0 = automatic
    std::size_t iters = 0;    // 0 = command default
    double grad_tol = 1e-10;
    double adam_beta1 = 0.5;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
};

// Merged options for one command invocation: built-in defaults, overridden by
// the config file's [defaults] and per-command sections, overridden by flags.
struct HarnessConfig {
    ModelSpec model;
    OptimizerSpec optimizer;
    std::string regularizer = "invex";  // none | l2 | invex
    std::vector<double> lambdas;        // empty = command default
    std::string out_dir = "out";
    double f_min = 0.0;

    // verification knobs
    std::size_t pl_samples = 1000;
    std::size_t pair_samples = 1000;
    std::size_t eig_samples = 100;
    std::size_t smoothness_samples = 64;
    std::size_t gd_budget = 20000;

    Tolerances tol;
};

// Applies `path` to `cfg` for the given command. The file is a flat
// key-value format: '#' comments, one optional [defaults] section plus one
// optional section per command ([verify], [ridge-demo], [sweep-sigmoid],
// [compare-l2]). Unknown sections or keys are hard errors with the offending
// line number. `command` picks which per-command section applies.
void apply_config_file(HarnessConfig& cfg, const std::string& path, const std::string& command);

}  // namespace invex
