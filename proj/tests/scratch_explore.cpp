// scratch: classical Fisher landscape + Monte Carlo sanity for the
// acceptance estimation criteria (not part of the shipped test suite)
#include <cstdio>

#include "qmetro/criteria.hpp"
#include "qmetro/estimation.hpp"
#include "qmetro/qfi.hpp"
#include "qmetro/states.hpp"

using namespace qmetro;

int main() {
    const Vector3d y(0, 1, 0);
    const CavesParams p{std::sqrt(2.0), 0.0, 0.7, 0.0};
    auto basis = make_basis(auto_cutoff(p));
    SpinOperators ops(basis);
    const auto state = caves_state(p, basis);
    const auto povm = povm_number_difference(basis);

    const double fq = qfi_pure(state, ops.jy()).value;
    std::printf("cutoff=%d dim=%d\n", basis->cutoff(), basis->dim());
    std::printf("FQ=%.6f  <N>=%.6f  expected FQ=%.6f\n", fq,
                state.expectation(ops.number()),
                2.0 * std::exp(1.4) + std::sinh(0.7) * std::sinh(0.7));

    std::printf("\ntheta    F_E       F_E/F_Q\n");
    for (double th = 0.05; th < 3.1415; th += 0.1) {
        const double fe = classical_fisher(state, ops, y, th, povm);
        std::printf("%.3f  %8.4f  %.4f\n", th, fe, fe / fq);
    }

    // r = 0 comparison (coherent only)
    const CavesParams p0{std::sqrt(2.0), 0.0, 0.0, 0.0};
    auto basis0 = make_basis(auto_cutoff(p0));
    SpinOperators ops0(basis0);
    const auto coh = caves_state(p0, basis0);
    const auto povm0 = povm_number_difference(basis0);
    const double fq0 = qfi_pure(coh, ops0.jy()).value;
    std::printf("\nr=0: FQ=%.6f\ntheta    F_E       F_E/F_Q\n", fq0);
    for (double th = 0.05; th < 3.1415; th += 0.1) {
        const double fe = classical_fisher(coh, ops0, y, th, povm0);
        std::printf("%.3f  %8.4f  %.4f\n", th, fe, fe / fq0);
    }
    return 0;
}
