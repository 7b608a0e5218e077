#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qmetro/povm.hpp"
#include "qmetro/rng.hpp"
#include "qmetro/spin_operators.hpp"

namespace qmetro {

/// Phase rotation exp(-i theta J_n) applied blockwise, exploiting
/// [J_n, N] = 0.  The per-block eigensystems of J_n are computed once at
/// construction so repeated applications at many theta are cheap.
class Rotation {
  public:
    Rotation(const SpinOperators& ops, const Vector3d& direction);

    const Vector3d& direction() const { return direction_; }

    TwoModeState apply(const TwoModeState& state, double theta) const;

    /// Dense unitary exp(-i theta J_n) (desk-scale bases only).
    Eigen::MatrixXcd unitary(double theta) const;

  private:
    struct Block {
        std::vector<int> indices;
        Eigen::VectorXd eigs;
        Eigen::MatrixXcd vecs;
    };
    BasisPtr basis_;
    Vector3d direction_;
    std::vector<Block> blocks_;
};

/// rho(theta) = exp(-i theta J_n) rho exp(+i theta J_n).
TwoModeState evolve(const TwoModeState& state, double theta, const SpinOperators& ops,
                    const Vector3d& direction);

/// m i.i.d. outcome labels drawn from P(l|theta) = tr[E(l) rho(theta)].
std::vector<double> sample_outcomes(const TwoModeState& state, double theta,
                                    const SpinOperators& ops, const Vector3d& direction,
                                    const Povm& povm, int m, Rng& rng);

struct MlOptions {
    int grid_points = 1000;
    double refine_tol = 1e-6;   // radians
};

/// Interferometer readout model: probability table machinery shared by the
/// sampler and the likelihood maximizer.
class LikelihoodModel {
  public:
    LikelihoodModel(const TwoModeState& state, const SpinOperators& ops,
                    const Vector3d& direction, const Povm& povm);

    Eigen::VectorXd probabilities(double theta) const;
    const Povm& povm() const { return *povm_; }

    /// log-likelihood of counts (indexed like povm elements) at theta
    double log_likelihood(const Eigen::VectorXi& counts, double theta) const;

    Eigen::VectorXi count_samples(const std::vector<double>& samples) const;

  private:
    const TwoModeState* state_;
    const Povm* povm_;
    Rotation rotation_;
};

/// Maximum-likelihood phase estimate over the window: coarse grid scan, then
/// golden-section refinement.  Throws estimator_undefined_error when the
/// likelihood carries no information over the window.
double ml_estimate(const std::vector<double>& samples, const TwoModeState& state,
                   const SpinOperators& ops, const Vector3d& direction, const Povm& povm,
                   std::pair<double, double> window, const MlOptions& opts = {});

struct EstimationRun {
    double theta_true = 0.0;
    int m = 0;
    int n_trials = 0;
    std::uint64_t seed = 0;
    std::pair<double, double> window{0.0, 0.0};
    std::vector<double> estimates;

    double mean() const;
    double stddev() const;
    double rms_error() const;
};

/// n_trials independent maximum-likelihood estimates, each from m samples;
/// trial t uses the deterministic stream Rng::for_trial(seed, t).
EstimationRun run_estimation(const TwoModeState& state, double theta_true,
                             const SpinOperators& ops, const Vector3d& direction,
                             const Povm& povm, int m, int n_trials, std::uint64_t seed,
                             std::pair<double, double> window, const MlOptions& opts = {});

/// theta maximizing the classical Fisher information of the POVM over a
/// coarse scan of [lo, hi].
double find_working_point(const TwoModeState& state, const SpinOperators& ops,
                          const Vector3d& direction, const Povm& povm, double lo,
                          double hi, int scan_points = 60);

} // namespace qmetro
