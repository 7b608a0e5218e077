#include <doctest.h>

#include <cmath>

#include "qmetro/criteria.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/states.hpp"

using namespace qmetro;

namespace {

const Vector3d kYAxis(0.0, 1.0, 0.0);

TwoModeState make_caves(const CavesParams& p) {
    return caves_state(p, make_basis(auto_cutoff(p)));
}

} // namespace

TEST_CASE("chi^2: coherent-only input sits exactly at shot noise") {
    const CavesParams p{2.0, 0.0, 0.0, 0.0};
    auto basis = make_basis(auto_cutoff(p));
    SpinOperators ops(basis);
    CHECK(chi_squared(caves_state(p, basis), ops, kYAxis) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("chi^2 at |alpha|^2=4, r=1 matches the closed form") {
    const CavesParams p{2.0, 0.0, 1.0, 0.0};
    auto basis = make_basis(auto_cutoff(p));
    SpinOperators ops(basis);
    const double numeric = chi_squared(caves_state(p, basis), ops, kYAxis);
    const double s2 = std::sinh(1.0) * std::sinh(1.0);
    const double oracle = (4.0 + s2) / (4.0 * std::exp(2.0) + s2);
    CHECK(numeric == doctest::Approx(oracle).epsilon(1e-5));
    CHECK(numeric == doctest::Approx(0.17394).epsilon(1e-4));
}

TEST_CASE("chi^2 >= 1 for separable inputs (spot sample)") {
    auto basis = make_basis(6);
    SpinOperators ops(basis);
    Rng rng(5);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto state = random_separable_state(basis, seed, 5, 3);
        Vector3d dir(rng.normal(), rng.normal(), rng.normal());
        if (dir.norm() < 1e-6) dir = kYAxis;
        CHECK(chi_squared(state, ops, dir) >= 1.0 - 1e-8);
    }
}

TEST_CASE("chi^2 edge cases: vacuum rejected, conserved generator diverges") {
    auto basis = make_basis(3);
    SpinOperators ops(basis);
    const auto vac = fock_state(basis, 0, 0);
    CHECK_THROWS_AS(chi_squared(vac, ops, kYAxis), invalid_argument_error);

    // |N,0> is an eigenstate of J_z: no information, chi^2 = +inf
    const auto polarized = fock_state(basis, 3, 0);
    CHECK(std::isinf(chi_squared(polarized, ops, Vector3d(0, 0, 1))));
}

TEST_CASE("xi^2 at |alpha|^2=4, r=1 matches the closed form") {
    const CavesParams p{2.0, 0.0, 1.0, 0.0};
    auto basis = make_basis(auto_cutoff(p));
    SpinOperators ops(basis);
    const double numeric = xi_squared(caves_state(p, basis), ops, SpinFrame::mach_zehnder());
    const double s2 = std::sinh(1.0) * std::sinh(1.0);
    const double oracle = (4.0 + s2) * (4.0 * std::exp(-2.0) + s2) / ((4.0 - s2) * (4.0 - s2));
    CHECK(numeric == doctest::Approx(oracle).epsilon(1e-5));
    CHECK(numeric == doctest::Approx(caves_xi2_analytic(p)).epsilon(1e-5));
}

TEST_CASE("xi^2 = 1 for a spin-coherent state polarized along n1") {
    auto basis = make_basis(8);
    SpinOperators ops(basis);
    const SpinFrame frame = SpinFrame::mach_zehnder();
    // polarize along n1 = -z: all particles in mode b
    const auto cs = spin_coherent_state(basis, 6, M_PI, 0.0);
    CHECK(xi_squared(cs, ops, frame) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("xi^2 degenerate denominator flags +inf instead of throwing") {
    auto basis = make_basis(4);
    SpinOperators ops(basis);
    const auto noon = noon_state(basis, 3);
    CHECK(std::isinf(xi_squared(noon, ops, SpinFrame::mach_zehnder())));
}

TEST_CASE("analytic caves chi^2: limits and the worked value") {
    CHECK(caves_chi2_analytic({2.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(caves_chi2_analytic({0.0, 0.0, 0.7, 0.0}) == doctest::Approx(1.0));
    CHECK(caves_chi2_analytic({2.0, 0.0, 1.0, 0.0}) ==
          doctest::Approx(0.17394).epsilon(1e-4));
}

TEST_CASE("analytic caves xi^2: limits, squeezing regime, pole") {
    CHECK(caves_xi2_analytic({1.3, 0.0, 0.0, 0.0}) == doctest::Approx(1.0));
    // |alpha|^2 >> sinh^2 r approaches e^{-2r}
    CHECK(caves_xi2_analytic({10.0, 0.0, 0.5, 0.0}) ==
          doctest::Approx(std::exp(-1.0)).epsilon(0.05));
    // pole at |alpha|^2 = sinh^2 r
    const double r = 0.9;
    CHECK(std::isinf(caves_xi2_analytic({std::sinh(r), 0.0, r, 0.0})));
}

TEST_CASE("shot-noise limit arithmetic and the coherent-state coincidence") {
    CHECK(shot_noise_limit(100.0, 1) == doctest::Approx(0.1));
    CHECK(shot_noise_limit(1.0, 10000) == doctest::Approx(0.01));
    CHECK_THROWS_AS(shot_noise_limit(0.0, 1), invalid_argument_error);

    const CavesParams p{2.0, 0.0, 0.0, 0.0};
    auto basis = make_basis(auto_cutoff(p));
    SpinOperators ops(basis);
    const MetroReport r = report(caves_state(p, basis), ops, SpinFrame::mach_zehnder(), 3);
    CHECK(r.dtheta_qcr == doctest::Approx(r.sn_limit).epsilon(1e-6));
}

TEST_CASE("sensitivity bounds from moments") {
    // fixed N: both arms coincide at 1/N
    const auto fixed = heisenberg_bounds(10.0, 100.0, 1);
    CHECK(fixed.bound_inc == doctest::Approx(0.1));
    CHECK(fixed.bound_hl == doctest::Approx(0.1));
    CHECK(fixed.bound_coh == doctest::Approx(0.1));

    const auto b1 = heisenberg_bounds(10.0, 200.0, 1);
    CHECK(b1.bound_inc == doctest::Approx(0.1));  // max(1/sqrt(200), 1/10)

    const auto b2 = heisenberg_bounds(10.0, 200.0, 100);
    CHECK(b2.bound_inc == doctest::Approx(1.0 / std::sqrt(20000.0)));

    CHECK_THROWS_AS(heisenberg_bounds(10.0, 50.0, 1), invalid_argument_error);
}

TEST_CASE("report: caves state and its projection give identical criteria") {
    const CavesParams p{1.3, 0.0, 0.6, 0.0};
    auto basis = make_basis(auto_cutoff(p));
    SpinOperators ops(basis);
    const auto caves = caves_state(p, basis);
    const auto red = ssr_project(caves);

    const SpinFrame frame = SpinFrame::mach_zehnder();
    const MetroReport a = report(caves, ops, frame, 1);
    const MetroReport b = report(red, ops, frame, 1);
    CHECK(b.chi2 == doctest::Approx(a.chi2).epsilon(1e-8));
    CHECK(b.xi2 == doctest::Approx(a.xi2).epsilon(1e-8));
    CHECK(b.fq == doctest::Approx(a.fq).epsilon(1e-8));
}

TEST_CASE("report flags: separable not entangled; pole squeezing lost but entangled") {
    auto basis = make_basis(6);
    SpinOperators ops(basis);
    const auto sep = random_separable_state(basis, 17, 5, 3);
    const MetroReport rs = report(sep, ops, SpinFrame::mach_zehnder(), 1);
    CHECK(!rs.entangled);

    const double r = 0.8;
    const CavesParams pole{std::sinh(r), 0.0, r, 0.0};
    const auto state = make_caves(pole);
    SpinOperators ops2(state.basis());
    const MetroReport rp = report(state, ops2, SpinFrame::mach_zehnder(), 1);
    CHECK(rp.entangled);
    CHECK(!rp.squeezed);
    CHECK(std::isinf(rp.xi2));
}

TEST_CASE("squeezing implies entanglement: chi^2 <= xi^2 on aligned frames") {
    auto basis = make_basis(6);
    SpinOperators ops(basis);
    Rng rng(99);
    int finite_cases = 0;
    for (int t = 0; t < 40; ++t) {
        TwoModeState state = (t % 2 == 0) ? random_pure_state(basis, 1000 + t, 6)
                                          : random_mixed_state(basis, 2000 + t, 5);
        Vector3d n3(rng.normal(), rng.normal(), rng.normal());
        if (n3.norm() < 1e-6) n3 = Vector3d(1, 0, 0);
        const SpinFrame frame = polarization_aligned_frame(state, ops, n3);
        frame.check_invariants();
        const double xi2 = xi_squared(state, ops, frame);
        if (!std::isfinite(xi2)) continue;
        ++finite_cases;
        const double chi2 = chi_squared(state, ops, frame.n2);
        CHECK(chi2 <= xi2 + 1e-8);
    }
    CHECK(finite_cases > 20);
}

TEST_CASE("caves sensitivity approaches the 1/N_tot scaling at the balance point") {
    // slope of log dtheta_QCR against log N_tot along |alpha|^2 = sinh^2 r
    std::vector<double> xs, ys;
    for (double ntot = 4.0; ntot <= 100.0; ntot *= 1.3) {
        const double s2 = 0.5 * ntot;
        const double r = std::asinh(std::sqrt(s2));
        const CavesParams p{std::sqrt(s2), 0.0, r, 0.0};
        const double fq = p.mean_photons() / caves_chi2_analytic(p);
        xs.push_back(std::log(ntot));
        ys.push_back(std::log(1.0 / std::sqrt(fq)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope <= -0.90);
    CHECK(slope >= -1.05);
}
