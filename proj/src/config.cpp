#include "qmetro/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "qmetro/csv.hpp"
#include "qmetro/errors.hpp"

namespace qmetro {

using nlohmann::json;

namespace {

Vector3d parse_vec3(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3)
        throw config_error(what + " must be an array of 3 numbers");
    return Vector3d(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Command parse_command(const std::string& s) {
    if (s == "analyze") return Command::analyze;
    if (s == "sweep") return Command::sweep;
    if (s == "estimate") return Command::estimate;
    if (s == "bounds") return Command::bounds;
    throw config_error("unknown command '" + s + "'");
}

std::string command_name(Command c) {
    switch (c) {
        case Command::analyze: return "analyze";
        case Command::sweep: return "sweep";
        case Command::estimate: return "estimate";
        case Command::bounds: return "bounds";
    }
    return "?";
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) {
                ok = true;
                break;
            }
        if (!ok) throw config_error("unknown key '" + key + "' in " + where);
    }
}

} // namespace

RunConfig parse_config_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(j,
               {"command", "state", "cutoff", "tail_threshold", "cutoff_cap", "axis", "n3",
                "povm", "theta_true", "m", "n_trials", "seed", "window", "sweep", "mean_n",
                "mean_n2", "out"},
               "config");
    RunConfig c;
    if (j.contains("command")) c.command = parse_command(j["command"].get<std::string>());
    if (j.contains("state")) {
        const auto& s = j["state"];
        check_keys(s,
                   {"kind", "alpha_mag", "phi_alpha", "r", "theta_zeta", "n_a", "n_b", "n",
                    "seed", "max_n", "n_terms"},
                   "state");
        if (s.contains("kind")) c.state.kind = s["kind"].get<std::string>();
        if (s.contains("alpha_mag")) c.state.caves.alpha_mag = s["alpha_mag"].get<double>();
        if (s.contains("phi_alpha")) c.state.caves.phi_alpha = s["phi_alpha"].get<double>();
        if (s.contains("r")) c.state.caves.r = s["r"].get<double>();
        if (s.contains("theta_zeta")) c.state.caves.theta_zeta = s["theta_zeta"].get<double>();
        if (s.contains("n_a")) c.state.n_a = s["n_a"].get<int>();
        if (s.contains("n_b")) c.state.n_b = s["n_b"].get<int>();
        if (s.contains("n")) c.state.noon_n = s["n"].get<int>();
        if (s.contains("seed")) c.state.gen_seed = s["seed"].get<std::uint64_t>();
        if (s.contains("max_n")) c.state.max_n = s["max_n"].get<int>();
        if (s.contains("n_terms")) c.state.n_terms = s["n_terms"].get<int>();
    }
    if (j.contains("cutoff")) {
        if (j["cutoff"].is_string())
            c.cutoff = j["cutoff"].get<std::string>();
        else
            c.cutoff = std::to_string(j["cutoff"].get<int>());
    }
    if (j.contains("tail_threshold")) c.tail_threshold = j["tail_threshold"].get<double>();
    if (j.contains("cutoff_cap")) c.cutoff_cap = j["cutoff_cap"].get<int>();
    if (j.contains("axis")) c.axis = parse_vec3(j["axis"], "axis");
    if (j.contains("n3")) c.n3 = parse_vec3(j["n3"], "n3");
    if (j.contains("povm")) c.povm = j["povm"].get<std::string>();
    if (j.contains("theta_true")) c.theta_true = j["theta_true"].get<double>();
    if (j.contains("m")) c.m = j["m"].get<int>();
    if (j.contains("n_trials")) c.n_trials = j["n_trials"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("window")) {
        const auto& w = j["window"];
        if (!w.is_array() || w.size() != 2)
            throw config_error("window must be [lo, hi]");
        c.window = std::make_pair(w[0].get<double>(), w[1].get<double>());
    }
    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        check_keys(s, {"param", "min", "max", "steps"}, "sweep");
        if (s.contains("param")) c.sweep.param = s["param"].get<std::string>();
        if (s.contains("min")) c.sweep.min = s["min"].get<double>();
        if (s.contains("max")) c.sweep.max = s["max"].get<double>();
        if (s.contains("steps")) c.sweep.steps = s["steps"].get<int>();
    }
    if (j.contains("mean_n")) c.mean_n = j["mean_n"].get<double>();
    if (j.contains("mean_n2")) c.mean_n2 = j["mean_n2"].get<double>();
    if (j.contains("out")) c.out_path = j["out"].get<std::string>();
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_json_text(ss.str());
}

std::string config_to_json(const RunConfig& c) {
    json j;
    j["command"] = command_name(c.command);
    json s;
    s["kind"] = c.state.kind;
    if (c.state.kind == "caves") {
        s["alpha_mag"] = c.state.caves.alpha_mag;
        s["phi_alpha"] = c.state.caves.phi_alpha;
        s["r"] = c.state.caves.r;
        s["theta_zeta"] = c.state.caves.theta_zeta;
    } else if (c.state.kind == "fock") {
        s["n_a"] = c.state.n_a;
        s["n_b"] = c.state.n_b;
    } else if (c.state.kind == "noon") {
        s["n"] = c.state.noon_n;
    } else {
        s["seed"] = c.state.gen_seed;
        s["max_n"] = c.state.max_n;
        s["n_terms"] = c.state.n_terms;
    }
    j["state"] = s;
    j["cutoff"] = c.cutoff;
    j["resolved_cutoff"] = resolve_cutoff(c);
    j["tail_threshold"] = c.tail_threshold;
    j["cutoff_cap"] = c.cutoff_cap;
    j["axis"] = {c.axis.x(), c.axis.y(), c.axis.z()};
    j["n3"] = {c.n3.x(), c.n3.y(), c.n3.z()};
    j["povm"] = c.povm;
    j["seed"] = c.seed;
    if (c.command == Command::estimate) {
        j["theta_true"] = c.theta_true;
        j["m"] = c.m;
        j["n_trials"] = c.n_trials;
        if (c.window) j["window"] = {c.window->first, c.window->second};
    }
    if (c.command == Command::sweep) {
        j["sweep"] = {{"param", c.sweep.param},
                      {"min", c.sweep.min},
                      {"max", c.sweep.max},
                      {"steps", c.sweep.steps}};
    }
    if (c.command == Command::bounds) {
        j["m"] = c.m;
        if (c.mean_n) j["mean_n"] = *c.mean_n;
        if (c.mean_n2) j["mean_n2"] = *c.mean_n2;
    }
    return j.dump();
}

int resolve_cutoff(const RunConfig& c) {
    if (c.cutoff != "auto") {
        int v = 0;
        try {
            v = std::stoi(c.cutoff);
        } catch (const std::exception&) {
            throw config_error("cutoff must be 'auto' or a positive integer");
        }
        if (v < 1) throw config_error("cutoff must be >= 1");
        return v;
    }
    if (c.state.kind == "caves")
        return auto_cutoff(c.state.caves, c.tail_threshold, c.cutoff_cap);
    if (c.state.kind == "fock") return std::max({1, c.state.n_a, c.state.n_b});
    if (c.state.kind == "noon") return std::max(1, c.state.noon_n);
    if (c.state.kind == "separable" || c.state.kind == "separable_coherent")
        return std::max(1, c.state.max_n);
    throw config_error("unknown state kind '" + c.state.kind + "'");
}

TwoModeState build_state(const RunConfig& c, const BasisPtr& basis) {
    if (c.state.kind == "caves") return caves_state(c.state.caves, basis, c.tail_threshold);
    if (c.state.kind == "fock") return fock_state(basis, c.state.n_a, c.state.n_b);
    if (c.state.kind == "noon") return noon_state(basis, c.state.noon_n);
    if (c.state.kind == "separable")
        return random_separable_state(basis, c.state.gen_seed, c.state.max_n, c.state.n_terms);
    if (c.state.kind == "separable_coherent")
        return random_separable_coherent_state(basis, c.state.gen_seed, c.state.max_n,
                                               c.state.n_terms);
    throw config_error("unknown state kind '" + c.state.kind + "'");
}

SpinFrame build_frame(const RunConfig& c) {
    if (c.axis.norm() < 1e-12 || c.n3.norm() < 1e-12)
        throw config_error("axis and n3 must be nonzero vectors");
    const Vector3d n2 = c.axis.normalized();
    const Vector3d n3 = c.n3.normalized();
    if (std::abs(n2.dot(n3)) > 1e-10)
        throw config_error("rotation axis must be orthogonal to n3");
    return SpinFrame::from_axes(n2.cross(n3), n2);
}

Povm build_povm(const RunConfig& c, const BasisPtr& basis) {
    if (c.povm == "number_difference") return povm_number_difference(basis);
    if (c.povm == "parity_a") return povm_parity(basis, Port::a);
    if (c.povm == "parity_b") return povm_parity(basis, Port::b);
    throw config_error("unknown povm '" + c.povm + "'");
}

std::string metro_report_csv_header() {
    return "cutoff,mean_n,mean_n2,fq,chi2,xi2,dtheta_qcr,sn_limit,hl_inc,hl_ssr,hl_coh,m,"
           "entangled,squeezed,n1x,n1y,n1z,n2x,n2y,n2z,n3x,n3y,n3z";
}

std::string metro_report_csv_row(const MetroReport& r, int cutoff) {
    std::vector<std::string> cells;
    cells.push_back(std::to_string(cutoff));
    for (double v : {r.mean_n, r.mean_n2, r.fq, r.chi2, r.xi2, r.dtheta_qcr, r.sn_limit,
                     r.hl.bound_inc, r.hl.bound_hl, r.hl.bound_coh})
        cells.push_back(csv_double(v));
    cells.push_back(std::to_string(r.m));
    cells.push_back(csv_bool(r.entangled));
    cells.push_back(csv_bool(r.squeezed));
    for (const auto* n : {&r.frame.n1, &r.frame.n2, &r.frame.n3})
        for (int k = 0; k < 3; ++k) cells.push_back(csv_double((*n)[k]));
    return csv_join(cells);
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw config_error("cannot open output file " + path);
    f << content;
}

std::string table_line(const std::string& label, const std::string& value,
                       const std::string& note = "") {
    std::ostringstream os;
    os << "  " << std::left << std::setw(22) << label << value;
    if (!note.empty()) os << "   (" << note << ")";
    os << "\n";
    return os.str();
}

void run_analyze(const RunConfig& c, std::ostream& out) {
    const int cutoff = resolve_cutoff(c);
    auto basis = make_basis(cutoff);
    const auto state = build_state(c, basis);
    SpinOperators ops(basis);
    const SpinFrame frame = build_frame(c);
    const MetroReport r = report(state, ops, frame, c.m);

    out << "analyze: state=" << c.state.kind << " cutoff=" << cutoff << " m=" << c.m << "\n";
    out << table_line("<N>", csv_double(r.mean_n));
    out << table_line("<N^2>", csv_double(r.mean_n2));
    out << table_line("F_Q", csv_double(r.fq));
    out << table_line("chi^2", csv_double(r.chi2),
                      r.entangled ? "entangled" : "not entangled");
    out << table_line("xi^2", csv_double(r.xi2),
                      r.squeezed ? "spin squeezed" : "not squeezed");
    if (c.state.kind == "caves") {
        out << table_line("chi^2 analytic", csv_double(caves_chi2_analytic(c.state.caves)));
        out << table_line("xi^2 analytic", csv_double(caves_xi2_analytic(c.state.caves)));
    }
    out << table_line("dtheta_QCR", csv_double(r.dtheta_qcr));
    out << table_line("dtheta_SN", csv_double(r.sn_limit));
    out << table_line("HL incoherent", csv_double(r.hl.bound_inc));
    out << table_line("HL number-conserving", csv_double(r.hl.bound_hl));
    out << table_line("HL coherent", csv_double(r.hl.bound_coh));

    if (!c.out_path.empty()) {
        std::ostringstream csv;
        csv << "# qmetro analyze\n# config: " << config_to_json(c) << "\n";
        csv << metro_report_csv_header() << "\n";
        csv << metro_report_csv_row(r, cutoff) << "\n";
        write_file(c.out_path, csv.str());
    }
}

void run_sweep(const RunConfig& c, std::ostream& out) {
    if (c.sweep.steps < 1) throw config_error("sweep needs steps >= 1");
    if (c.state.kind != "caves")
        throw config_error("sweep supports caves states (parameters alpha_mag, phi_alpha, r, theta_zeta)");
    double CavesParams::*field = nullptr;
    if (c.sweep.param == "r") field = &CavesParams::r;
    else if (c.sweep.param == "alpha_mag") field = &CavesParams::alpha_mag;
    else if (c.sweep.param == "phi_alpha") field = &CavesParams::phi_alpha;
    else if (c.sweep.param == "theta_zeta") field = &CavesParams::theta_zeta;
    else throw config_error("unknown sweep parameter '" + c.sweep.param + "'");

    std::ostringstream csv;
    csv << "# qmetro sweep\n# config: " << config_to_json(c) << "\n";
    csv << c.sweep.param << "," << metro_report_csv_header() << "\n";

    for (int i = 0; i <= c.sweep.steps; ++i) {
        RunConfig point = c;
        const double v =
            c.sweep.min + (c.sweep.max - c.sweep.min) * i / static_cast<double>(c.sweep.steps);
        point.state.caves.*field = v;
        const int cutoff = resolve_cutoff(point);
        auto basis = make_basis(cutoff);
        const auto state = build_state(point, basis);
        SpinOperators ops(basis);
        const MetroReport r = report(state, ops, build_frame(point), c.m);
        csv << csv_double(v) << "," << metro_report_csv_row(r, cutoff) << "\n";
    }
    const std::string text = csv.str();
    out << text;
    if (!c.out_path.empty()) write_file(c.out_path, text);
}

void run_estimate(const RunConfig& c, std::ostream& out) {
    if (c.m < 1) throw config_error("estimate needs m >= 1");
    if (c.n_trials < 1) throw config_error("estimate needs n_trials >= 1");
    const int cutoff = resolve_cutoff(c);
    auto basis = make_basis(cutoff);
    const auto state = build_state(c, basis);
    SpinOperators ops(basis);
    const Povm povm = build_povm(c, basis);
    const std::pair<double, double> window = c.window.value_or(
        std::make_pair(c.theta_true - M_PI / 4.0, c.theta_true + M_PI / 4.0));

    const EstimationRun run = run_estimation(state, c.theta_true, ops, c.axis, povm, c.m,
                                             c.n_trials, c.seed, window);

    const double mean_n = state.expectation(ops.number());
    const double mean_n2 = state.second_moment(ops.number());
    const double fq = qfi_auto(state, ops, c.axis).value;
    const double qcr = 1.0 / std::sqrt(c.m * fq);
    const double sn = shot_noise_limit(mean_n, c.m);
    const auto hl = heisenberg_bounds(mean_n, mean_n2, c.m);

    out << "estimate: state=" << c.state.kind << " cutoff=" << cutoff << " m=" << c.m
        << " n_trials=" << c.n_trials << " theta_true=" << csv_double(c.theta_true) << "\n";
    out << table_line("mean(theta_est)", csv_double(run.mean()));
    out << table_line("stddev", csv_double(run.stddev()));
    out << table_line("rms_error", csv_double(run.rms_error()));
    out << table_line("dtheta_QCR", csv_double(qcr),
                      run.rms_error() >= qcr ? "rms >= QCR bound" : "rms below QCR bound");
    out << table_line("dtheta_SN", csv_double(sn),
                      run.rms_error() < sn ? "sub shot-noise" : "at or above shot noise");
    out << table_line("HL number-conserving", csv_double(hl.bound_hl),
                      run.rms_error() >= hl.bound_hl ? "rms >= HL" : "rms below HL");

    std::ostringstream csv;
    csv << "# qmetro estimate\n# config: " << config_to_json(c) << "\n";
    csv << "trial,theta_est\n";
    for (std::size_t t = 0; t < run.estimates.size(); ++t)
        csv << t << "," << csv_double(run.estimates[t]) << "\n";
    csv << "# summary\n";
    csv << "mean,stddev,rms_error,dtheta_qcr,sn_limit,hl_ssr\n";
    csv << csv_double(run.mean()) << "," << csv_double(run.stddev()) << ","
        << csv_double(run.rms_error()) << "," << csv_double(qcr) << "," << csv_double(sn)
        << "," << csv_double(hl.bound_hl) << "\n";
    if (!c.out_path.empty()) write_file(c.out_path, csv.str());
}

void run_bounds(const RunConfig& c, std::ostream& out) {
    if (c.m < 1) throw config_error("bounds needs m >= 1");
    double mean_n = 0.0, mean_n2 = 0.0;
    int cutoff = 0;
    if (c.mean_n && c.mean_n2) {
        mean_n = *c.mean_n;
        mean_n2 = *c.mean_n2;
    } else if (c.mean_n || c.mean_n2) {
        throw config_error("bounds needs both mean_n and mean_n2 (or neither)");
    } else {
        cutoff = resolve_cutoff(c);
        auto basis = make_basis(cutoff);
        const auto state = build_state(c, basis);
        SpinOperators ops(basis);
        mean_n = state.expectation(ops.number());
        mean_n2 = state.second_moment(ops.number());
    }
    if (mean_n <= 0.0) throw config_error("bounds needs mean_n > 0");
    const auto hl = heisenberg_bounds(mean_n, mean_n2, c.m);
    const double sn = shot_noise_limit(mean_n, c.m);

    out << "bounds: <N>=" << csv_double(mean_n) << " <N^2>=" << csv_double(mean_n2)
        << " m=" << c.m << " (N_tot = " << csv_double(c.m * mean_n) << ")\n";
    out << table_line("shot noise", csv_double(sn), "separable states, any POVM");
    out << table_line("incoherent max-bound", csv_double(hl.bound_inc),
                      "states without number coherences");
    out << table_line("HL 1/N_tot", csv_double(hl.bound_hl),
                      "SSR states, or any state with number-conserving POVMs");
    out << table_line("coherent bound", csv_double(hl.bound_coh),
                      "number coherences in state and POVM, outside the central limit");
}

} // namespace

void run_command(const RunConfig& c, std::ostream& out) {
    switch (c.command) {
        case Command::analyze: run_analyze(c, out); return;
        case Command::sweep: run_sweep(c, out); return;
        case Command::estimate: run_estimate(c, out); return;
        case Command::bounds: run_bounds(c, out); return;
    }
    throw config_error("unknown command");
}

} // namespace qmetro
