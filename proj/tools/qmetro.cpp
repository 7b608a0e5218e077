// Command-line front end: analyze / sweep / estimate / bounds over two-mode
// interferometer states.  Configuration comes from an optional JSON file
// (--config) with command-line overrides; exit codes are 0 on success, 2 for
// configuration errors, 3 for numerical-consistency failures.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qmetro/config.hpp"
#include "qmetro/errors.hpp"

namespace {

struct CliValues {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::string cutoff;
    std::optional<double> tail_threshold;
    std::string state_kind;
    std::optional<double> alpha_mag, phi_alpha, r, theta_zeta;
    std::optional<int> n_a, n_b, noon_n, max_n, n_terms;
    std::optional<std::uint64_t> gen_seed;
    std::vector<double> axis, n3;
    std::string povm;
    std::optional<double> theta_true;
    std::optional<int> m, n_trials;
    std::vector<double> window;
    std::string sweep_param;
    std::optional<double> sweep_min, sweep_max;
    std::optional<int> sweep_steps;
    std::optional<double> mean_n, mean_n2;
};

void add_common_options(CLI::App* cmd, CliValues& v) {
    cmd->add_option("--config", v.config_path, "JSON config file");
    cmd->add_option("--out", v.out_path, "CSV output path");
    cmd->add_option("--seed", v.seed, "RNG seed");
    cmd->add_option("--cutoff", v.cutoff, "per-mode Fock cutoff, or 'auto'");
    cmd->add_option("--tail-threshold", v.tail_threshold,
                    "truncation tail threshold for auto cutoff");
    cmd->add_option("--state", v.state_kind,
                    "caves|fock|noon|separable|separable_coherent");
    cmd->add_option("--alpha-mag", v.alpha_mag, "|alpha| of the coherent mode");
    cmd->add_option("--phi-alpha", v.phi_alpha, "coherent phase (rad)");
    cmd->add_option("--r", v.r, "squeezing magnitude");
    cmd->add_option("--theta-zeta", v.theta_zeta, "squeezing phase (rad)");
    cmd->add_option("--n-a", v.n_a, "Fock occupation, mode a");
    cmd->add_option("--n-b", v.n_b, "Fock occupation, mode b");
    cmd->add_option("--noon-n", v.noon_n, "NOON particle number");
    cmd->add_option("--max-n", v.max_n, "largest populated block (random generators)");
    cmd->add_option("--n-terms", v.n_terms, "mixture terms (random generators)");
    cmd->add_option("--gen-seed", v.gen_seed, "random-state generator seed");
    cmd->add_option("--axis", v.axis, "rotation axis nx ny nz")->expected(3);
    cmd->add_option("--n3", v.n3, "frame squeezing axis nx ny nz")->expected(3);
    cmd->add_option("--povm", v.povm, "number_difference|parity_a|parity_b");
    cmd->add_option("--m", v.m, "measurements per estimate / repetitions");
}

void apply_overrides(qmetro::RunConfig& cfg, const CliValues& v) {
    if (!v.out_path.empty()) cfg.out_path = v.out_path;
    if (v.seed) cfg.seed = *v.seed;
    if (!v.cutoff.empty()) cfg.cutoff = v.cutoff;
    if (v.tail_threshold) cfg.tail_threshold = *v.tail_threshold;
    if (!v.state_kind.empty()) cfg.state.kind = v.state_kind;
    if (v.alpha_mag) cfg.state.caves.alpha_mag = *v.alpha_mag;
    if (v.phi_alpha) cfg.state.caves.phi_alpha = *v.phi_alpha;
    if (v.r) cfg.state.caves.r = *v.r;
    if (v.theta_zeta) cfg.state.caves.theta_zeta = *v.theta_zeta;
    if (v.n_a) cfg.state.n_a = *v.n_a;
    if (v.n_b) cfg.state.n_b = *v.n_b;
    if (v.noon_n) cfg.state.noon_n = *v.noon_n;
    if (v.max_n) cfg.state.max_n = *v.max_n;
    if (v.n_terms) cfg.state.n_terms = *v.n_terms;
    if (v.gen_seed) cfg.state.gen_seed = *v.gen_seed;
    if (v.axis.size() == 3) cfg.axis = qmetro::Vector3d(v.axis[0], v.axis[1], v.axis[2]);
    if (v.n3.size() == 3) cfg.n3 = qmetro::Vector3d(v.n3[0], v.n3[1], v.n3[2]);
    if (!v.povm.empty()) cfg.povm = v.povm;
    if (v.theta_true) cfg.theta_true = *v.theta_true;
    if (v.m) cfg.m = *v.m;
    if (v.n_trials) cfg.n_trials = *v.n_trials;
    if (v.window.size() == 2) cfg.window = std::make_pair(v.window[0], v.window[1]);
    if (!v.sweep_param.empty()) cfg.sweep.param = v.sweep_param;
    if (v.sweep_min) cfg.sweep.min = *v.sweep_min;
    if (v.sweep_max) cfg.sweep.max = *v.sweep_max;
    if (v.sweep_steps) cfg.sweep.steps = *v.sweep_steps;
    if (v.mean_n) cfg.mean_n = *v.mean_n;
    if (v.mean_n2) cfg.mean_n2 = *v.mean_n2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-mode interferometry: criteria, bounds and phase estimation"};
    app.require_subcommand(1);

    CliValues v;
    auto* analyze = app.add_subcommand("analyze", "criteria and bounds for one state");
    auto* sweep = app.add_subcommand("sweep", "criteria along one parameter axis");
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo phase estimation");
    auto* bounds = app.add_subcommand("bounds", "sensitivity bounds from moments");
    for (auto* cmd : {analyze, sweep, estimate, bounds}) add_common_options(cmd, v);

    estimate->add_option("--theta-true", v.theta_true, "true phase (rad)");
    estimate->add_option("--n-trials", v.n_trials, "independent estimates");
    estimate->add_option("--window", v.window, "estimation window lo hi (rad)")->expected(2);
    sweep->add_option("--sweep-param", v.sweep_param, "r|alpha_mag|phi_alpha|theta_zeta");
    sweep->add_option("--sweep-min", v.sweep_min, "sweep start");
    sweep->add_option("--sweep-max", v.sweep_max, "sweep end");
    sweep->add_option("--sweep-steps", v.sweep_steps, "number of intervals");
    bounds->add_option("--mean-n", v.mean_n, "<N> (explicit moments)");
    bounds->add_option("--mean-n2", v.mean_n2, "<N^2> (explicit moments)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        qmetro::RunConfig cfg;
        if (!v.config_path.empty()) cfg = qmetro::load_config_file(v.config_path);
        if (analyze->parsed()) cfg.command = qmetro::Command::analyze;
        if (sweep->parsed()) cfg.command = qmetro::Command::sweep;
        if (estimate->parsed()) cfg.command = qmetro::Command::estimate;
        if (bounds->parsed()) cfg.command = qmetro::Command::bounds;
        apply_overrides(cfg, v);
        qmetro::run_command(cfg, std::cout);
        return 0;
    } catch (const qmetro::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qmetro::invalid_argument_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qmetro::truncation_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qmetro::numerical_inconsistency_error& e) {
        std::cerr << "numerical consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
