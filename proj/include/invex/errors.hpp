#pragma once

#include <stdexcept>
#include <string>

namespace invex {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// SPD factorization hit a pivot at or below the pivot threshold.
struct NotSpd : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFullRowRank : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A model or optimizer produced NaN/Inf, or an iteration diverged.
struct NonFinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Trace lacks the data a check needs (e.g. recorded points).
struct TraceIncomplete : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Trace does not satisfy a check's preconditions (wrong algorithm, p0 != 0, ...).
struct InvalidTrace : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace invex
