#pragma once

#include <limits>

#include "qmetro/qfi.hpp"
#include "qmetro/spin_operators.hpp"
#include "qmetro/states.hpp"
#include "qmetro/two_mode_state.hpp"

namespace qmetro {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Strict-inequality guard for the entanglement / squeezing flags.
inline constexpr double kCriterionMargin = 1e-9;

/// chi^2 = <N> / F_Q[J_n, rho]; values below 1 witness entanglement and
/// sub-shot-noise usefulness.  Returns +inf when F_Q vanishes; throws on a
/// vacuum state (<N> = 0).
double chi_squared(const TwoModeState& state, const SpinOperators& ops,
                   const Vector3d& direction);

/// xi^2 = <N> (Delta J_n3)^2 / (<J_n1>^2 + <J_n2>^2); +inf when the
/// denominator is degenerate (not squeezed, by convention).
double xi_squared(const TwoModeState& state, const SpinOperators& ops,
                  const SpinFrame& frame);

/// chi^2 of the coherent + squeezed-vacuum input with the relative phase
/// locked (2 phi_alpha = theta_zeta):
///   (|alpha|^2 + sinh^2 r) / (|alpha|^2 e^{2r} + sinh^2 r).
double caves_chi2_analytic(const CavesParams& params);

/// xi^2 of the same input for n3 = x:
///   (|alpha|^2 + sinh^2 r)(|alpha|^2 e^{-2r} + sinh^2 r) / (|alpha|^2 - sinh^2 r)^2,
/// +inf at the pole |alpha|^2 = sinh^2 r.
double caves_xi2_analytic(const CavesParams& params);

/// 1/sqrt(m <N>), the best sensitivity of separable inputs.
double shot_noise_limit(double mean_n, int m);

struct HeisenbergBounds {
    double bound_inc = 0.0;  // max[1/sqrt(m<N^2>), 1/(m<N>)]
    double bound_hl = 0.0;   // 1/(m<N>) = 1/N_tot
    double bound_coh = 0.0;  // 1/sqrt(m<N^2>)
};

/// Phase-sensitivity floors under the <N>, <N^2>, m resource constraints.
/// Throws invalid_argument_error when mean_n2 < mean_n^2 (inconsistent
/// moments, up to rounding slack).
HeisenbergBounds heisenberg_bounds(double mean_n, double mean_n2, int m);

/// Everything the toolkit knows about one (state, frame, m) combination.
struct MetroReport {
    double mean_n = 0.0;
    double mean_n2 = 0.0;
    double fq = 0.0;
    double chi2 = 0.0;
    double xi2 = 0.0;
    double dtheta_qcr = 0.0;
    double sn_limit = 0.0;
    HeisenbergBounds hl;
    int m = 1;
    SpinFrame frame;
    bool entangled = false;
    bool squeezed = false;
};

/// Computes all criteria and bounds; the QFI generator is the rotation axis
/// J_n2 of the frame.
MetroReport report(const TwoModeState& state, const SpinOperators& ops,
                   const SpinFrame& frame, int m);

/// Frame with the given n3 whose in-plane axes are rotated so that
/// <J_n2> = 0 (n1 points along the in-plane polarization).  This is the
/// alignment under which xi^2 < 1 certifies chi^2 < 1; the in-plane rotation
/// leaves xi^2 itself unchanged.  Falls back to an arbitrary in-plane n1
/// when the in-plane polarization vanishes (xi^2 is +inf there anyway).
SpinFrame polarization_aligned_frame(const TwoModeState& state, const SpinOperators& ops,
                                     const Vector3d& n3);

} // namespace qmetro
