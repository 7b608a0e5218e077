#include "qmetro/criteria.hpp"

#include <cmath>

#include "qmetro/errors.hpp"

namespace qmetro {

double chi_squared(const TwoModeState& state, const SpinOperators& ops,
                   const Vector3d& direction) {
    const double mean_n = state.expectation(ops.number());
    if (mean_n <= 1e-12)
        throw invalid_argument_error("chi_squared: vacuum state has no phase resource");
    const double fq = qfi_auto(state, ops, direction).value;
    if (fq <= 0.0) return kInf;
    return mean_n / fq;
}

double xi_squared(const TwoModeState& state, const SpinOperators& ops,
                  const SpinFrame& frame) {
    frame.check_invariants();
    const double mean_n = state.expectation(ops.number());
    const double var3 = state.variance(ops.direction(frame.n3));
    const double m1 = state.expectation(ops.direction(frame.n1));
    const double m2 = state.expectation(ops.direction(frame.n2));
    const double denom = m1 * m1 + m2 * m2;
    if (denom <= 1e-12) return kInf;
    return mean_n * var3 / denom;
}

double caves_chi2_analytic(const CavesParams& params) {
    const double a2 = params.alpha_mag * params.alpha_mag;
    const double s2 = std::sinh(params.r) * std::sinh(params.r);
    return (a2 + s2) / (a2 * std::exp(2.0 * params.r) + s2);
}

double caves_xi2_analytic(const CavesParams& params) {
    const double a2 = params.alpha_mag * params.alpha_mag;
    const double s2 = std::sinh(params.r) * std::sinh(params.r);
    const double diff = a2 - s2;
    if (diff == 0.0) return kInf;
    return (a2 + s2) * (a2 * std::exp(-2.0 * params.r) + s2) / (diff * diff);
}

double shot_noise_limit(double mean_n, int m) {
    if (mean_n <= 0.0 || m < 1)
        throw invalid_argument_error("shot_noise_limit: need mean_n > 0 and m >= 1");
    return 1.0 / std::sqrt(m * mean_n);
}

HeisenbergBounds heisenberg_bounds(double mean_n, double mean_n2, int m) {
    if (mean_n <= 0.0 || m < 1)
        throw invalid_argument_error("heisenberg_bounds: need mean_n > 0 and m >= 1");
    // rounding slack so exact-N states (where <N^2> = <N>^2) pass
    if (mean_n2 < mean_n * mean_n * (1.0 - 1e-12))
        throw invalid_argument_error("heisenberg_bounds: <N^2> < <N>^2 is not a valid moment pair");
    HeisenbergBounds b;
    b.bound_coh = 1.0 / std::sqrt(m * mean_n2);
    b.bound_hl = 1.0 / (m * mean_n);
    b.bound_inc = std::max(b.bound_coh, b.bound_hl);
    return b;
}

SpinFrame polarization_aligned_frame(const TwoModeState& state, const SpinOperators& ops,
                                     const Vector3d& n3) {
    const Vector3d u3 = n3.normalized();
    const Vector3d pol(state.expectation(ops.jx()), state.expectation(ops.jy()),
                       state.expectation(ops.jz()));
    Vector3d in_plane = pol - pol.dot(u3) * u3;
    if (in_plane.norm() < 1e-14 * std::max(1.0, pol.norm()))
        in_plane = u3.unitOrthogonal();
    return SpinFrame::from_n3(u3, in_plane);
}

MetroReport report(const TwoModeState& state, const SpinOperators& ops,
                   const SpinFrame& frame, int m) {
    if (m < 1) throw invalid_argument_error("report: m must be >= 1");
    MetroReport r;
    r.frame = frame;
    r.m = m;
    r.mean_n = state.expectation(ops.number());
    r.mean_n2 = state.second_moment(ops.number());
    if (r.mean_n <= 1e-12)
        throw invalid_argument_error("report: vacuum state has no phase resource");
    r.fq = qfi_auto(state, ops, frame.n2).value;
    r.chi2 = (r.fq > 0.0) ? r.mean_n / r.fq : kInf;
    r.xi2 = xi_squared(state, ops, frame);
    r.dtheta_qcr = 1.0 / std::sqrt(m * r.fq);
    r.sn_limit = shot_noise_limit(r.mean_n, m);
    r.hl = heisenberg_bounds(r.mean_n, r.mean_n2, m);
    r.entangled = r.chi2 < 1.0 - kCriterionMargin;
    r.squeezed = std::isfinite(r.xi2) && r.xi2 < 1.0 - kCriterionMargin;
    return r;
}

} // namespace qmetro
