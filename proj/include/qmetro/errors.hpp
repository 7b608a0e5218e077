#pragma once

#include <stdexcept>
#include <string>

namespace qmetro {

// Invalid inputs: bad arguments, violated preconditions, malformed configs.
struct invalid_argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested state does not fit the truncated basis at the configured tail
// threshold.  Carries the smallest per-mode cutoff that would.
struct truncation_error : std::runtime_error {
    int required_cutoff;
    truncation_error(const std::string& msg, int required)
        : std::runtime_error(msg), required_cutoff(required) {}
};

// Block decomposition requested on a state with inter-block coherences.
struct not_incoherent_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// POVM fails its defining properties (completeness, positivity).
struct invalid_povm_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computed quantity violates an exact identity beyond tolerance
// (e.g. outcome probabilities not summing to one).
struct numerical_inconsistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Likelihood carries no information about the phase.
struct estimator_undefined_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed run configuration (CLI / config file level).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qmetro
