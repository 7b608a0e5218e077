#pragma once

#include <Eigen/Dense>

#include "qmetro/povm.hpp"
#include "qmetro/spin_operators.hpp"
#include "qmetro/two_mode_state.hpp"

namespace qmetro {

/// Pairs (k,l) with eigenvalue sum at or below this are excluded from the
/// spectral double sum (kernel of rho).
inline constexpr double kQfiEigenvalueFloor = 1e-12;

struct QfiResult {
    double value = 0.0;
    /// Number of (k,l) pairs that entered the double sum.
    long spectral_terms_used = 0;
    /// Sum of |<k|G|l>|^2 over the skipped pairs.
    double discarded_weight = 0.0;
};

/// Quantum Fisher information of a mixed state from the spectral formula
///   F_Q = 2 sum_{k,l} (lam_k - lam_l)^2 / (lam_k + lam_l) |<k|G|l>|^2.
/// Eigendecomposes rho once at construction; generators can then be swapped
/// cheaply (one basis change per call).
class QfiSolver {
  public:
    explicit QfiSolver(const TwoModeState& state);

    QfiResult qfi(const Eigen::MatrixXcd& generator) const;
    QfiResult qfi(const SparseOp& generator) const;

    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

  private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
};

/// Pure-state QFI, 4 (<G^2> - <G>^2).  Throws on mixed input.
QfiResult qfi_pure(const TwoModeState& state, const SparseOp& generator);

/// Mixed-state QFI via full eigendecomposition (pure input is promoted to a
/// rank-one density matrix).  Throws on a non-Hermitian generator.
QfiResult qfi_mixed(const TwoModeState& state, const SparseOp& generator);

/// QFI of an incoherent mixture as the weighted sum of per-block QFIs,
/// each from a per-block spectral decomposition.  Exact for block-diagonal
/// states since the generator commutes with N.
QfiResult qfi_block_diagonal(const BlockSpectrum& spectrum, const SpinOperators& ops,
                             const Vector3d& direction);

/// Route picker: pure -> qfi_pure, block-diagonal mixed -> per-block spectral
/// sum, general mixed -> dense spectral formula.
QfiResult qfi_auto(const TwoModeState& state, const SpinOperators& ops,
                   const Vector3d& direction);

/// Classical Fisher information F_E(theta) = sum_l (d_theta P(l|theta))^2 / P
/// of the POVM on the rotated state, with a central finite-difference
/// derivative of step dtheta.  Outcomes with P < 1e-12 are excluded.
double classical_fisher(const TwoModeState& state, const SpinOperators& ops,
                        const Vector3d& direction, double theta, const Povm& povm,
                        double dtheta = 1e-5);

/// Same with one step of Richardson extrapolation on the derivative
/// (combines steps dtheta and dtheta/2).
double classical_fisher_richardson(const TwoModeState& state, const SpinOperators& ops,
                                   const Vector3d& direction, double theta,
                                   const Povm& povm, double dtheta = 1e-5);

} // namespace qmetro
