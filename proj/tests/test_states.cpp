#include <doctest.h>

#include <cmath>

#include "qmetro/errors.hpp"
#include "qmetro/spin_operators.hpp"
#include "qmetro/states.hpp"

using namespace qmetro;

namespace {

// independent single-mode occupation distributions used as oracles below
double poisson_weight(double mu, int n) {
    return std::exp(-mu + n * std::log(mu) - std::lgamma(n + 1.0));
}

double squeezed_weight(double r, int n) {
    if (n % 2 != 0) return 0.0;
    const int k = n / 2;
    const double logw = std::lgamma(2.0 * k + 1.0) - 2.0 * k * std::log(2.0) -
                        2.0 * std::lgamma(k + 1.0) + 2.0 * k * std::log(std::tanh(r)) -
                        std::log(std::cosh(r));
    return std::exp(logw);
}

double mode_mean(const Eigen::VectorXcd& amps) {
    double s = 0.0;
    for (int n = 0; n < amps.size(); ++n) s += n * std::norm(amps[n]);
    return s;
}

} // namespace

TEST_CASE("coherent amplitudes: vacuum limit, mean, ground probability") {
    auto vac = coherent_amplitudes(0.0, 10);
    CHECK(std::abs(vac[0] - Complex(1, 0)) < 1e-15);
    CHECK(vac.tail(10).norm() == 0.0);

    auto a1 = coherent_amplitudes(1.0, 20);
    CHECK(mode_mean(a1) == doctest::Approx(1.0).epsilon(1e-8));

    auto a2 = coherent_amplitudes(2.0, 40);
    CHECK(std::norm(a2[0]) == doctest::Approx(std::exp(-4.0)).epsilon(1e-10));
}

TEST_CASE("coherent amplitudes: truncation error carries a usable hint") {
    try {
        coherent_amplitudes(3.0, 5);
        FAIL("expected truncation_error");
    } catch (const truncation_error& e) {
        CHECK(e.required_cutoff > 5);
        CHECK(coherent_tail(3.0, e.required_cutoff) < kDefaultTailThreshold);
        CHECK(coherent_tail(3.0, e.required_cutoff - 1) >= kDefaultTailThreshold);
    }
}

TEST_CASE("squeezed vacuum: r=0 limit, mean occupation, parity") {
    auto vac = squeezed_vacuum_amplitudes(0.0, 10);
    CHECK(std::abs(vac[0] - Complex(1, 0)) < 1e-15);

    auto s1 = squeezed_vacuum_amplitudes(1.0, 80);
    const double sinh2 = std::sinh(1.0) * std::sinh(1.0);
    CHECK(mode_mean(s1) == doctest::Approx(sinh2).epsilon(1e-6));

    for (int n = 1; n < s1.size(); n += 2) CHECK(std::abs(s1[n]) == 0.0);

    // amplitude magnitudes against the closed-form weights
    for (int n = 0; n <= 20; n += 2)
        CHECK(std::norm(s1[n]) == doctest::Approx(squeezed_weight(1.0, n)).epsilon(1e-9));
}

TEST_CASE("caves state: vacuum case and mean particle number") {
    const CavesParams p{1.5, 0.2, 0.8, 0.4};
    auto basis = make_basis(auto_cutoff(p));
    SpinOperators ops(basis);

    const auto vac = caves_state({0.0, 0.0, 0.0, 0.0}, basis);
    CHECK(std::abs(vac.amplitudes()[basis->index(0, 0)] - Complex(1, 0)) < 1e-15);

    const auto state = caves_state(p, basis);
    state.check_invariants();
    CHECK(state.expectation(ops.number()) ==
          doctest::Approx(p.mean_photons()).epsilon(1e-6));
    CHECK(state.trace_tail() < 1e-9);
    CHECK(state.trace_tail() >= 0.0);
}

TEST_CASE("auto cutoff meets the tail budget on both modes") {
    const CavesParams p{2.0, 0.0, 0.7, 0.0};
    const int c = auto_cutoff(p);
    CHECK(coherent_tail(p.alpha_mag, c) < kDefaultTailThreshold);
    CHECK(squeezed_tail(p.r, c) < kDefaultTailThreshold);
    CHECK((coherent_tail(p.alpha_mag, c - 1) >= kDefaultTailThreshold ||
           squeezed_tail(p.r, c - 1) >= kDefaultTailThreshold));
}

TEST_CASE("fock and noon states") {
    auto basis = make_basis(4);
    SpinOperators ops(basis);
    const auto f = fock_state(basis, 2, 1);
    CHECK(f.expectation(ops.number()) == doctest::Approx(3.0));
    CHECK_THROWS_AS(fock_state(basis, 5, 0), invalid_argument_error);

    const auto noon = noon_state(basis, 4);
    CHECK(noon.expectation(ops.number()) == doctest::Approx(4.0));
    CHECK(noon.variance(ops.jz()) == doctest::Approx(4.0));  // (N/2)^2
}

TEST_CASE("ssr projection: idempotent, trace preserving, moments unchanged") {
    const CavesParams p{1.0, 0.3, 0.4, 0.6};
    auto basis = make_basis(auto_cutoff(p));
    SpinOperators ops(basis);
    const auto caves = caves_state(p, basis);

    const auto red = ssr_project(caves);
    red.check_invariants();
    CHECK(red.block_diagonal());
    CHECK(red.purity() < 1.0);  // number fluctuates, so projection mixes

    const auto red2 = ssr_project(red);
    CHECK((red2.density() - red.density()).norm() < 1e-14);

    CHECK(red.expectation(ops.number()) ==
          doctest::Approx(caves.expectation(ops.number())).epsilon(1e-12));
    CHECK(red.second_moment(ops.number()) ==
          doctest::Approx(caves.second_moment(ops.number())).epsilon(1e-12));
}

TEST_CASE("projected caves blocks reproduce the convolved number distribution") {
    const CavesParams p{1.2, 0.0, 0.5, 0.0};
    auto basis = make_basis(auto_cutoff(p));
    const auto caves = caves_state(p, basis);
    const auto spec = project_and_decompose(caves);
    spec.check_invariants();

    const double mu = p.alpha_mag * p.alpha_mag;
    for (const auto& comp : spec.components) {
        double q_oracle = 0.0;
        for (int k = 0; k <= comp.total_n; ++k)
            q_oracle += poisson_weight(mu, k) * squeezed_weight(p.r, comp.total_n - k);
        if (q_oracle < 1e-12) continue;
        CHECK(comp.weight == doctest::Approx(q_oracle).epsilon(1e-6));
    }
    CHECK(spec.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decompose_blocks: single-block pure state and simple mixtures") {
    auto basis = make_basis(4);
    const auto f = fock_state(basis, 3, 1);
    const auto spec = decompose_blocks(f);
    REQUIRE(spec.components.size() == 1);
    CHECK(spec.components[0].total_n == 4);
    CHECK(spec.components[0].weight == doctest::Approx(1.0));

    // equal mixture of |1,0> and |2,0>
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(basis->dim(), basis->dim());
    rho(basis->index(1, 0), basis->index(1, 0)) = 0.5;
    rho(basis->index(2, 0), basis->index(2, 0)) = 0.5;
    const auto mix = TwoModeState::mixed(basis, rho);
    const auto spec2 = decompose_blocks(mix);
    REQUIRE(spec2.components.size() == 2);
    CHECK(spec2.components[0].weight == doctest::Approx(0.5));
    CHECK(spec2.components[1].weight == doctest::Approx(0.5));

    // a state with number coherences must be rejected
    auto basis2 = make_basis(2);
    const auto noon = noon_state(basis2, 2);
    Eigen::VectorXcd mixed_blocks = noon.amplitudes();
    mixed_blocks[basis2->index(0, 0)] = 0.5;
    mixed_blocks /= mixed_blocks.norm();
    const auto coh = TwoModeState::pure(basis2, mixed_blocks);
    CHECK_THROWS_AS(decompose_blocks(coh), not_incoherent_error);
}

TEST_CASE("recompose inverts decompose on block-diagonal states") {
    auto basis = make_basis(8);
    const auto state = random_separable_state(basis, 99, 6, 3);
    const auto spec = decompose_blocks(state);
    const auto back = recompose(spec);
    CHECK((back.density() - state.density()).norm() < 1e-12);
}

TEST_CASE("spin coherent state: polarization and Fock limit") {
    auto basis = make_basis(8);
    SpinOperators ops(basis);

    // all particles in mode a: Bloch angle 0 gives |N,0>
    const auto top = spin_coherent_state(basis, 5, 0.0, 0.0);
    CHECK(std::abs(std::abs(top.amplitudes()[basis->index(5, 0)]) - 1.0) < 1e-12);

    // polarization N/2 along the Bloch direction
    const double bt = 1.1, bp = 2.3;
    const auto cs = spin_coherent_state(basis, 6, bt, bp);
    const Vector3d dir(std::sin(bt) * std::cos(bp), std::sin(bt) * std::sin(bp),
                       std::cos(bt));
    CHECK(cs.expectation(ops.direction(dir)) == doctest::Approx(3.0).epsilon(1e-12));
    // transverse variance N/4
    const Vector3d perp = dir.unitOrthogonal();
    CHECK(cs.variance(ops.direction(perp)) == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("symmetrized products: identical factors match spin coherent, |a>,|b> gives |1,1>") {
    auto basis = make_basis(6);
    const double bt = 0.8, bp = 1.9;
    const Complex ca(std::cos(0.5 * bt), 0.0);
    const Complex cb = std::polar(std::sin(0.5 * bt), bp);

    const auto sym = symmetrized_product_state(basis, {{ca, cb}, {ca, cb}, {ca, cb}});
    const auto ref = spin_coherent_state(basis, 3, bt, bp);
    // same state up to global phase
    const Complex overlap = ref.amplitudes().dot(sym.amplitudes());
    CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-12));

    const auto hom = symmetrized_product_state(
        basis, {{Complex(1, 0), Complex(0, 0)}, {Complex(0, 0), Complex(1, 0)}});
    CHECK(std::abs(std::abs(hom.amplitudes()[basis->index(1, 1)]) - 1.0) < 1e-12);

    // orthogonal +-x factors symmetrize to the N=2 NOON state
    const auto s2 = symmetrized_product_state(
        basis, {{Complex(M_SQRT1_2, 0), Complex(M_SQRT1_2, 0)},
                {Complex(M_SQRT1_2, 0), Complex(-M_SQRT1_2, 0)}});
    CHECK(std::abs(s2.amplitudes()[basis->index(2, 0)]) ==
          doctest::Approx(M_SQRT1_2).epsilon(1e-12));
    CHECK(std::abs(s2.amplitudes()[basis->index(0, 2)]) ==
          doctest::Approx(M_SQRT1_2).epsilon(1e-12));

    // a vanishing factor cannot be symmetrized
    CHECK_THROWS_AS(
        symmetrized_product_state(
            basis, {{Complex(1, 0), Complex(0, 0)}, {Complex(0, 0), Complex(0, 0)}}),
        invalid_argument_error);
}

TEST_CASE("random separable generators: valid, block structure, deterministic") {
    auto basis = make_basis(8);

    const auto inc = random_separable_state(basis, 42, 6, 4);
    inc.check_invariants();
    CHECK(inc.block_diagonal());

    const auto coh = random_separable_coherent_state(basis, 42, 6, 4);
    coh.check_invariants();
    // superpositions across N genuinely carry coherences
    CHECK(!coh.block_diagonal());

    // bit-identical reproduction from the seed
    const auto inc2 = random_separable_state(basis, 42, 6, 4);
    CHECK((inc.density() - inc2.density()).norm() == 0.0);
    const auto coh2 = random_separable_coherent_state(basis, 42, 6, 4);
    CHECK((coh.density() - coh2.density()).norm() == 0.0);

    // different seed, different state
    const auto other = random_separable_state(basis, 43, 6, 4);
    CHECK((inc.density() - other.density()).norm() > 1e-6);

    CHECK_THROWS_AS(random_separable_state(basis, 1, 9, 2), invalid_argument_error);
}

TEST_CASE("random pure and mixed states are valid and reproducible") {
    auto basis = make_basis(6);
    const auto psi = random_pure_state(basis, 5, 5);
    psi.check_invariants();
    const auto psi2 = random_pure_state(basis, 5, 5);
    CHECK((psi.amplitudes() - psi2.amplitudes()).norm() == 0.0);

    const auto rho = random_mixed_state(basis, 5, 4);
    rho.check_invariants();
    CHECK(rho.purity() < 1.0);
}
