#pragma once

#include <complex>
#include <cstdint>

#include "qmetro/rng.hpp"
#include "qmetro/two_mode_state.hpp"

namespace qmetro {

inline constexpr double kDefaultTailThreshold = 1e-10;

/// Coherent state |alpha> in one input port, squeezed vacuum |zeta> with
/// zeta = r e^{i theta_zeta} in the other.
struct CavesParams {
    double alpha_mag = 0.0;
    double phi_alpha = 0.0;
    double r = 0.0;
    double theta_zeta = 0.0;

    std::complex<double> alpha() const {
        return std::polar(alpha_mag, phi_alpha);
    }
    double mean_photons() const {
        return alpha_mag * alpha_mag + std::sinh(r) * std::sinh(r);
    }
};

// --- truncation budget -----------------------------------------------------

/// Probability mass of a coherent state above occupation `cutoff`.
double coherent_tail(double alpha_mag, int cutoff);
/// Probability mass of a squeezed vacuum above occupation `cutoff`.
double squeezed_tail(double r, int cutoff);

/// Smallest per-mode cutoff with coherent_tail < threshold (similarly for
/// squeezed).  Throws truncation_error when the cap is exceeded.
int required_cutoff_coherent(double alpha_mag, double threshold, int cap);
int required_cutoff_squeezed(double r, double threshold, int cap);

/// Per-mode cutoff supporting both Caves modes at the threshold.
int auto_cutoff(const CavesParams& p, double threshold = kDefaultTailThreshold,
                int cap = 256);

// --- single-mode amplitude vectors ------------------------------------------

/// c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), renormalized after truncation.
/// Throws truncation_error (with a cutoff hint) when the tail exceeds the
/// threshold.  tail_out, when non-null, receives the discarded mass.
Eigen::VectorXcd coherent_amplitudes(std::complex<double> alpha, int cutoff,
                                     double tail_threshold = kDefaultTailThreshold,
                                     double* tail_out = nullptr);

/// Even amplitudes c_{2n} = (-e^{i theta} tanh r)^n sqrt((2n)!)/(2^n n! sqrt(cosh r)),
/// odd amplitudes zero; renormalized after truncation.
Eigen::VectorXcd squeezed_vacuum_amplitudes(std::complex<double> zeta, int cutoff,
                                            double tail_threshold = kDefaultTailThreshold,
                                            double* tail_out = nullptr);

// --- two-mode states ---------------------------------------------------------

/// Product of single-mode amplitude vectors (mode a x mode b).
TwoModeState product_state(const BasisPtr& basis, const Eigen::VectorXcd& mode_a,
                           const Eigen::VectorXcd& mode_b, double trace_tail = 0.0);

TwoModeState caves_state(const CavesParams& params, const BasisPtr& basis,
                         double tail_threshold = kDefaultTailThreshold);

TwoModeState fock_state(const BasisPtr& basis, int n_a, int n_b);

/// (|N,0> + |0,N>)/sqrt(2).
TwoModeState noon_state(const BasisPtr& basis, int n);

/// Symmetric product of N copies of the single-particle state
/// cos(theta/2)|a> + e^{i phi} sin(theta/2)|b>, i.e. the spin-coherent state
/// of the N-block pointing along the given Bloch vector.
TwoModeState spin_coherent_state(const BasisPtr& basis, int n, double bloch_theta,
                                 double bloch_phi);

/// Bosonic symmetrization of a product of N possibly distinct single-particle
/// states (c_a^(j), c_b^(j)).  Note: for distinct factors the symmetrized
/// state is generally entangled (e.g. |1,1> from |a>,|b>).
TwoModeState symmetrized_product_state(
    const BasisPtr& basis,
    const std::vector<std::pair<std::complex<double>, std::complex<double>>>& particles);

// --- random state generators --------------------------------------------------

/// Incoherent separable mixture: random block weights Q_N on 0..max_N and per
/// block a mixture of n_terms spin-coherent states.  Requires max_N <= cutoff
/// so every populated block is complete.  Reproducible from the seed.
TwoModeState random_separable_state(const BasisPtr& basis, std::uint64_t seed,
                                    int max_n, int n_terms);

/// Separable state with number coherences: mixture of n_terms pure states,
/// each a superposition sum_N sqrt(Q_N) e^{i phi_N} |spin-coherent_N>.
TwoModeState random_separable_coherent_state(const BasisPtr& basis, std::uint64_t seed,
                                             int max_n, int n_terms);

/// Haar-like random pure state supported on blocks 0..max_N (with inter-block
/// coherences).
TwoModeState random_pure_state(const BasisPtr& basis, std::uint64_t seed, int max_n);

/// Random full-rank density matrix (Ginibre construction) supported on blocks
/// 0..max_N.
TwoModeState random_mixed_state(const BasisPtr& basis, std::uint64_t seed, int max_n);

} // namespace qmetro
