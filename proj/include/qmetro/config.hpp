#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "qmetro/criteria.hpp"
#include "qmetro/estimation.hpp"
#include "qmetro/states.hpp"

namespace qmetro {

enum class Command { analyze, sweep, estimate, bounds };

struct StateSpec {
    std::string kind = "caves";  // caves | fock | noon | separable | separable_coherent
    CavesParams caves{2.0, 0.0, 0.0, 0.0};
    int n_a = 1, n_b = 0;        // fock
    int noon_n = 1;              // noon
    std::uint64_t gen_seed = 1;  // random generators
    int max_n = 4;
    int n_terms = 3;
};

struct SweepSpec {
    std::string param;  // r | alpha_mag | phi_alpha | theta_zeta
    double min = 0.0;
    double max = 1.0;
    int steps = 0;
};

/// Fully describes one run; every field has a defined default so a resolved
/// config can be embedded verbatim in output headers.
struct RunConfig {
    Command command = Command::analyze;
    StateSpec state;
    std::string cutoff = "auto";  // "auto" or a positive integer
    double tail_threshold = kDefaultTailThreshold;
    int cutoff_cap = 256;
    Vector3d axis{0.0, 1.0, 0.0};  // rotation axis, also the frame's n2
    Vector3d n3{1.0, 0.0, 0.0};    // squeezing axis of the frame
    std::string povm = "number_difference";  // | parity_a | parity_b
    double theta_true = 0.1;
    int m = 100;
    int n_trials = 100;
    std::uint64_t seed = 42;
    std::optional<std::pair<double, double>> window;
    SweepSpec sweep;
    std::optional<double> mean_n;   // bounds command, explicit moments
    std::optional<double> mean_n2;
    std::string out_path;
};

/// Loads a JSON config file; unknown keys are rejected.  Throws config_error.
RunConfig load_config_file(const std::string& path);
RunConfig parse_config_json_text(const std::string& text);

/// Compact single-line JSON of the fully-resolved config (deterministic key
/// order), as embedded in CSV '#' comments.
std::string config_to_json(const RunConfig& config);

/// Resolved cutoff for the configured state ("auto" picks the smallest
/// per-mode cutoff with tail < tail_threshold, capped).
int resolve_cutoff(const RunConfig& config);

TwoModeState build_state(const RunConfig& config, const BasisPtr& basis);
SpinFrame build_frame(const RunConfig& config);
Povm build_povm(const RunConfig& config, const BasisPtr& basis);

/// Column order of a MetroReport CSV row (stable public format).
std::string metro_report_csv_header();
std::string metro_report_csv_row(const MetroReport& report, int cutoff);

/// Executes the configured command, writing human-readable output to `out`
/// and CSV to config.out_path when set.  Throws config_error for bad
/// configurations and numerical_inconsistency_error for consistency
/// failures.
void run_command(const RunConfig& config, std::ostream& out);

} // namespace qmetro
