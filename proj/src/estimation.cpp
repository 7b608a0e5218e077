#include "qmetro/estimation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "qmetro/errors.hpp"
#include "qmetro/qfi.hpp"

namespace qmetro {

namespace {
constexpr double kLogClip = 1e-300;
constexpr double kGolden = 0.6180339887498948482;
} // namespace

Rotation::Rotation(const SpinOperators& ops, const Vector3d& direction)
    : basis_(ops.basis()), direction_(direction.normalized()) {
    const auto& b = *basis_;
    blocks_.reserve(b.block_count());
    for (int n = 0; n < b.block_count(); ++n) {
        Block blk;
        blk.indices = b.block(n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            ops.direction_block(direction_, blk.indices));
        blk.eigs = es.eigenvalues();
        blk.vecs = es.eigenvectors();
        blocks_.push_back(std::move(blk));
    }
}

TwoModeState Rotation::apply(const TwoModeState& state, double theta) const {
    if (state.basis()->cutoff() != basis_->cutoff())
        throw invalid_argument_error("rotation and state bases differ");

    if (state.is_pure()) {
        Eigen::VectorXcd out = state.amplitudes();
        for (const auto& blk : blocks_) {
            const int s = static_cast<int>(blk.indices.size());
            Eigen::VectorXcd sub(s);
            for (int k = 0; k < s; ++k) sub[k] = out[blk.indices[k]];
            Eigen::VectorXcd coeffs = blk.vecs.adjoint() * sub;
            for (int k = 0; k < s; ++k)
                coeffs[k] *= std::polar(1.0, -theta * blk.eigs[k]);
            sub = blk.vecs * coeffs;
            for (int k = 0; k < s; ++k) out[blk.indices[k]] = sub[k];
        }
        return TwoModeState::pure(state.basis(), std::move(out), state.trace_tail());
    }

    // mixed: U rho U^dag applied block-row then block-column
    Eigen::MatrixXcd rho = state.density();
    for (const auto& blk : blocks_) {
        const int s = static_cast<int>(blk.indices.size());
        Eigen::MatrixXcd u = blk.vecs;
        for (int c = 0; c < s; ++c)
            u.col(c) = blk.vecs.col(c) * std::polar(1.0, -theta * blk.eigs[c]);
        const Eigen::MatrixXcd ublk = u * blk.vecs.adjoint();

        Eigen::MatrixXcd rows(s, rho.cols());
        for (int k = 0; k < s; ++k) rows.row(k) = rho.row(blk.indices[k]);
        rows = ublk * rows;
        for (int k = 0; k < s; ++k) rho.row(blk.indices[k]) = rows.row(k);
    }
    for (const auto& blk : blocks_) {
        const int s = static_cast<int>(blk.indices.size());
        Eigen::MatrixXcd u = blk.vecs;
        for (int c = 0; c < s; ++c)
            u.col(c) = blk.vecs.col(c) * std::polar(1.0, -theta * blk.eigs[c]);
        const Eigen::MatrixXcd ublk = u * blk.vecs.adjoint();

        Eigen::MatrixXcd cols(rho.rows(), s);
        for (int k = 0; k < s; ++k) cols.col(k) = rho.col(blk.indices[k]);
        cols = cols * ublk.adjoint();
        for (int k = 0; k < s; ++k) rho.col(blk.indices[k]) = cols.col(k);
    }
    return TwoModeState::mixed(state.basis(), std::move(rho), state.trace_tail());
}

Eigen::MatrixXcd Rotation::unitary(double theta) const {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(basis_->dim(), basis_->dim());
    for (const auto& blk : blocks_) {
        const int s = static_cast<int>(blk.indices.size());
        Eigen::MatrixXcd phased = blk.vecs;
        for (int c = 0; c < s; ++c)
            phased.col(c) = blk.vecs.col(c) * std::polar(1.0, -theta * blk.eigs[c]);
        const Eigen::MatrixXcd ublk = phased * blk.vecs.adjoint();
        for (int j = 0; j < s; ++j)
            for (int i = 0; i < s; ++i) u(blk.indices[i], blk.indices[j]) = ublk(i, j);
    }
    return u;
}

TwoModeState evolve(const TwoModeState& state, double theta, const SpinOperators& ops,
                    const Vector3d& direction) {
    return Rotation(ops, direction).apply(state, theta);
}

std::vector<double> sample_outcomes(const TwoModeState& state, double theta,
                                    const SpinOperators& ops, const Vector3d& direction,
                                    const Povm& povm, int m, Rng& rng) {
    if (m < 1) throw invalid_argument_error("sample_outcomes: m must be >= 1");
    Rotation rot(ops, direction);
    const Eigen::VectorXd p = povm.probabilities(rot.apply(state, theta));
    std::vector<double> cum(p.size());
    double acc = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        acc += p[i];
        cum[i] = acc;
    }
    std::vector<double> out(m);
    for (int k = 0; k < m; ++k) {
        const double u = rng.uniform() * acc;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::size_t idx = std::min<std::size_t>(it - cum.begin(), p.size() - 1);
        out[k] = povm.elements[idx].label;
    }
    return out;
}

LikelihoodModel::LikelihoodModel(const TwoModeState& state, const SpinOperators& ops,
                                 const Vector3d& direction, const Povm& povm)
    : state_(&state), povm_(&povm), rotation_(ops, direction) {
    povm.check_completeness();
}

Eigen::VectorXd LikelihoodModel::probabilities(double theta) const {
    return povm_->probabilities(rotation_.apply(*state_, theta));
}

double LikelihoodModel::log_likelihood(const Eigen::VectorXi& counts, double theta) const {
    const Eigen::VectorXd p = probabilities(theta);
    double ll = 0.0;
    for (int i = 0; i < counts.size(); ++i)
        if (counts[i] > 0) ll += counts[i] * std::log(std::max(p[i], kLogClip));
    return ll;
}

Eigen::VectorXi LikelihoodModel::count_samples(const std::vector<double>& samples) const {
    std::map<double, int> index;
    for (std::size_t i = 0; i < povm_->elements.size(); ++i)
        index[povm_->elements[i].label] = static_cast<int>(i);
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(povm_->elements.size());
    for (double s : samples) {
        const auto it = index.find(s);
        if (it == index.end())
            throw invalid_argument_error("sample label not produced by this POVM");
        ++counts[it->second];
    }
    return counts;
}

namespace {

double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

// Shared grid-scan + refinement; the table holds log-clipped probabilities,
// one row per grid point.
double ml_from_table(const LikelihoodModel& model, const Eigen::MatrixXd& log_table,
                     const Eigen::VectorXd& grid, const Eigen::VectorXi& counts,
                     std::pair<double, double> window, const MlOptions& opts) {
    const int g = static_cast<int>(grid.size());
    Eigen::VectorXd ll(g);
    for (int i = 0; i < g; ++i) {
        double acc = 0.0;
        for (int j = 0; j < counts.size(); ++j)
            if (counts[j] > 0) acc += counts[j] * log_table(i, j);
        ll[i] = acc;
    }
    int best = 0;
    ll.maxCoeff(&best);
    const double spread = ll.maxCoeff() - ll.minCoeff();
    if (!(spread > 1e-12 * std::max(1.0, std::abs(ll.maxCoeff()))))
        throw estimator_undefined_error("flat likelihood: no phase information in samples");

    const double lo = (best > 0) ? grid[best - 1] : window.first;
    const double hi = (best + 1 < g) ? grid[best + 1] : window.second;
    return golden_section_max(
        [&](double th) { return model.log_likelihood(counts, th); }, lo, hi,
        opts.refine_tol);
}

} // namespace

double ml_estimate(const std::vector<double>& samples, const TwoModeState& state,
                   const SpinOperators& ops, const Vector3d& direction, const Povm& povm,
                   std::pair<double, double> window, const MlOptions& opts) {
    if (samples.empty()) throw invalid_argument_error("ml_estimate: no samples");
    if (!(window.second > window.first))
        throw invalid_argument_error("ml_estimate: empty window");
    LikelihoodModel model(state, ops, direction, povm);
    const Eigen::VectorXi counts = model.count_samples(samples);

    const int g = opts.grid_points;
    Eigen::VectorXd grid(g);
    Eigen::MatrixXd log_table(g, static_cast<int>(povm.elements.size()));
    for (int i = 0; i < g; ++i) {
        grid[i] = window.first + (window.second - window.first) * i / (g - 1.0);
        const Eigen::VectorXd p = model.probabilities(grid[i]);
        for (int j = 0; j < p.size(); ++j)
            log_table(i, j) = std::log(std::max(p[j], kLogClip));
    }
    return ml_from_table(model, log_table, grid, counts, window, opts);
}

double EstimationRun::mean() const {
    double s = 0.0;
    for (double e : estimates) s += e;
    return s / estimates.size();
}

double EstimationRun::stddev() const {
    const double mu = mean();
    double s = 0.0;
    for (double e : estimates) s += (e - mu) * (e - mu);
    return std::sqrt(s / (estimates.size() - 1));
}

double EstimationRun::rms_error() const {
    double s = 0.0;
    for (double e : estimates) s += (e - theta_true) * (e - theta_true);
    return std::sqrt(s / estimates.size());
}

EstimationRun run_estimation(const TwoModeState& state, double theta_true,
                             const SpinOperators& ops, const Vector3d& direction,
                             const Povm& povm, int m, int n_trials, std::uint64_t seed,
                             std::pair<double, double> window, const MlOptions& opts) {
    if (m < 1 || n_trials < 1)
        throw invalid_argument_error("run_estimation: m and n_trials must be >= 1");
    if (!(window.second > window.first))
        throw invalid_argument_error("run_estimation: empty window");

    LikelihoodModel model(state, ops, direction, povm);

    // trial-independent tables: outcome distribution at theta_true and the
    // log-probability grid over the window
    const Eigen::VectorXd p_true = model.probabilities(theta_true);
    std::vector<double> cum(p_true.size());
    double acc = 0.0;
    for (int i = 0; i < p_true.size(); ++i) {
        acc += p_true[i];
        cum[i] = acc;
    }

    const int g = opts.grid_points;
    Eigen::VectorXd grid(g);
    Eigen::MatrixXd log_table(g, static_cast<int>(povm.elements.size()));
    for (int i = 0; i < g; ++i) {
        grid[i] = window.first + (window.second - window.first) * i / (g - 1.0);
        const Eigen::VectorXd p = model.probabilities(grid[i]);
        for (int j = 0; j < p.size(); ++j)
            log_table(i, j) = std::log(std::max(p[j], kLogClip));
    }

    EstimationRun run;
    run.theta_true = theta_true;
    run.m = m;
    run.n_trials = n_trials;
    run.seed = seed;
    run.window = window;
    run.estimates.reserve(n_trials);

    for (int t = 0; t < n_trials; ++t) {
        Rng rng = Rng::for_trial(seed, t);
        Eigen::VectorXi counts = Eigen::VectorXi::Zero(p_true.size());
        for (int k = 0; k < m; ++k) {
            const double u = rng.uniform() * acc;
            const auto it = std::upper_bound(cum.begin(), cum.end(), u);
            const std::size_t idx =
                std::min<std::size_t>(it - cum.begin(), cum.size() - 1);
            ++counts[static_cast<int>(idx)];
        }
        run.estimates.push_back(ml_from_table(model, log_table, grid, counts, window, opts));
    }
    return run;
}

double find_working_point(const TwoModeState& state, const SpinOperators& ops,
                          const Vector3d& direction, const Povm& povm, double lo,
                          double hi, int scan_points) {
    double best_theta = lo, best_f = -1.0;
    for (int i = 0; i < scan_points; ++i) {
        const double th = lo + (hi - lo) * i / (scan_points - 1.0);
        const double f = classical_fisher(state, ops, direction, th, povm);
        if (f > best_f) {
            best_f = f;
            best_theta = th;
        }
    }
    return best_theta;
}

} // namespace qmetro
