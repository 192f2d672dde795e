#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "invex/analysis.hpp"
#include "invex/config.hpp"
#include "invex/csv.hpp"

namespace invex {

struct CommandResult {
    int exit_code = 0;
    nlohmann::json summary;
};

// Command-specific defaults; the config file and CLI flags layer on top.
HarnessConfig default_config(const std::string& command);

// Model factory honoring an optional JSON dataset file ({"A": [[...]], "b": [...]}).
std::shared_ptr<DifferentiableMap> build_model(const ModelSpec& spec);

// The models the verification suite certifies, derived from one base seed:
// an under-determined linear system, the 64x8 sigmoid classification task,
// and an over-parameterized tanh network.
struct BundledModel {
    std::string name;
    std::shared_ptr<DifferentiableMap> map;
    Vector x0;
};

std::vector<BundledModel> bundled_models(std::uint64_t seed);

CommandResult cmd_verify(const HarnessConfig& cfg);
CommandResult cmd_ridge_demo(const HarnessConfig& cfg);
CommandResult cmd_sweep_sigmoid(const HarnessConfig& cfg);
CommandResult cmd_compare_l2(const HarnessConfig& cfg);

}  // namespace invex
