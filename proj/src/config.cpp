#include "invex/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "invex/errors.hpp"

namespace invex {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw ConfigError(path + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& path, std::size_t line, const std::string& key,
                    const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        fail(path, line, "key '" + key + "': cannot parse '" + value + "' as a real number");
    }
}

std::uint64_t parse_u64(const std::string& path, std::size_t line, const std::string& key,
                        const std::string& value) {
    try {
        std::size_t used = 0;
        const unsigned long long x = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        fail(path, line, "key '" + key + "': cannot parse '" + value + "' as an unsigned integer");
    }
}

std::vector<double> parse_double_list(const std::string& path, std::size_t line,
                                      const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(path, line, "key '" + key + "': empty list element");
        out.push_back(parse_double(path, line, key, item));
    }
    if (out.empty()) fail(path, line, "key '" + key + "': empty list");
    return out;
}

bool apply_tolerance_key(Tolerances& tol, const std::string& key, double value) {
    if (key == "tol.fd_step") tol.fd_step = value;
    else if (key == "tol.hvp_step") tol.hvp_step = value;
    else if (key == "tol.power_rel") tol.power_rel = value;
    else if (key == "tol.pl_slack") tol.pl_slack = value;
    else if (key == "tol.invexity_slack") tol.invexity_slack = value;
    else if (key == "tol.rate_slack") tol.rate_slack = value;
    else if (key == "tol.pinv_residual") tol.pinv_residual = value;
    else if (key == "tol.eig_floor_slack") tol.eig_floor_slack = value;
    else if (key == "tol.ridge_equiv_inf") tol.ridge_equiv_inf = value;
    else if (key == "tol.ridge_p_consistency") tol.ridge_p_consistency = value;
    else if (key == "tol.grad_check") tol.grad_check = value;
    else return false;
    return true;
}

void apply_key(HarnessConfig& cfg, const std::string& path, std::size_t line,
               const std::string& key, const std::string& value) {
    if (key == "model") {
        if (value != "sigmoid" && value != "affine" && value != "mlp")
            fail(path, line, "model must be sigmoid, affine or mlp (got '" + value + "')");
        cfg.model.kind = value;
    } else if (key == "n") {
        cfg.model.n = static_cast<std::size_t>(parse_u64(path, line, key, value));
    } else if (key == "d") {
        cfg.model.d = static_cast<std::size_t>(parse_u64(path, line, key, value));
    } else if (key == "hidden") {
        cfg.model.hidden = static_cast<std::size_t>(parse_u64(path, line, key, value));
    } else if (key == "seed") {
        cfg.model.seed = parse_u64(path, line, key, value);
    } else if (key == "dataset") {
        cfg.model.dataset = value;
    } else if (key == "regularizer") {
        if (value != "none" && value != "l2" && value != "invex")
            fail(path, line, "regularizer must be none, l2 or invex (got '" + value + "')");
        cfg.regularizer = value;
    } else if (key == "lambdas" || key == "lambda") {
        cfg.lambdas = parse_double_list(path, line, key, value);
    } else if (key == "optimizer") {
        if (value != "gd" && value != "adam")
            fail(path, line, "optimizer must be gd or adam (got '" + value + "')");
        cfg.optimizer.kind = value;
    } else if (key == "step_size") {
        cfg.optimizer.step_size = value == "auto" ? 0.0 : parse_double(path, line, key, value);
    } else if (key == "iters") {
        cfg.optimizer.iters = static_cast<std::size_t>(parse_u64(path, line, key, value));
    } else if (key == "grad_tol") {
        cfg.optimizer.grad_tol = parse_double(path, line, key, value);
    } else if (key == "adam_beta1") {
        cfg.optimizer.adam_beta1 = parse_double(path, line, key, value);
    } else if (key == "adam_beta2") {
        cfg.optimizer.adam_beta2 = parse_double(path, line, key, value);
    } else if (key == "adam_eps") {
        cfg.optimizer.adam_eps = parse_double(path, line, key, value);
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else if (key == "f_min") {
        cfg.f_min = parse_double(path, line, key, value);
    } else if (key == "pl_samples") {
        cfg.pl_samples = static_cast<std::size_t>(parse_u64(path, line, key, value));
    } else if (key == "pair_samples") {
        cfg.pair_samples = static_cast<std::size_t>(parse_u64(path, line, key, value));
    } else if (key == "eig_samples") {
        cfg.eig_samples = static_cast<std::size_t>(parse_u64(path, line, key, value));
    } else if (key == "smoothness_samples") {
        cfg.smoothness_samples = static_cast<std::size_t>(parse_u64(path, line, key, value));
    } else if (key == "gd_budget") {
        cfg.gd_budget = static_cast<std::size_t>(parse_u64(path, line, key, value));
    } else if (key == "tol.power_max_iters") {
        cfg.tol.power_max_iters = static_cast<std::size_t>(parse_u64(path, line, key, value));
    } else if (key.rfind("tol.", 0) == 0) {
        if (!apply_tolerance_key(cfg.tol, key, parse_double(path, line, key, value)))
            fail(path, line, "unknown tolerance key '" + key + "'");
    } else {
        fail(path, line, "unknown key '" + key + "'");
    }
}

}  // namespace

void apply_config_file(HarnessConfig& cfg, const std::string& path, const std::string& command) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");

    static const std::vector<std::string> known_sections = {"defaults", "verify", "ridge-demo",
                                                            "sweep-sigmoid", "compare-l2"};
    std::string section = "defaults";
    bool section_active = true;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(path, line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (std::find(known_sections.begin(), known_sections.end(), section) ==
                known_sections.end())
                fail(path, line_no, "unknown section [" + section + "]");
            section_active = section == "defaults" || section == command;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(path, line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(path, line_no, "empty key");
        if (value.empty()) fail(path, line_no, "key '" + key + "': empty value");
        if (section_active) {
            apply_key(cfg, path, line_no, key, value);
        } else {
            HarnessConfig scratch = cfg;  // inactive sections still get full validation
            apply_key(scratch, path, line_no, key, value);
        }
    }
}

}  // namespace invex
