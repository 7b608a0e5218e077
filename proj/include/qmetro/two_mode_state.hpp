#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <vector>

#include "qmetro/fock_basis.hpp"

namespace qmetro {

using Complex = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<Complex>;

inline constexpr double kStateTol = 1e-10;   // hermiticity / norm / trace
inline constexpr double kBlockTol = 1e-10;   // inter-block coherence mass

/// State of the truncated two-mode system: either a pure amplitude vector
/// or a density matrix, plus the probability mass lost to truncation.
class TwoModeState {
  public:
    static TwoModeState pure(BasisPtr basis, Eigen::VectorXcd amplitudes,
                             double trace_tail = 0.0);
    static TwoModeState mixed(BasisPtr basis, Eigen::MatrixXcd density,
                              double trace_tail = 0.0);

    bool is_pure() const { return pure_; }
    const BasisPtr& basis() const { return basis_; }
    double trace_tail() const { return trace_tail_; }

    const Eigen::VectorXcd& amplitudes() const;
    const Eigen::MatrixXcd& density() const;

    /// Density matrix regardless of representation (materializes |psi><psi|
    /// for pure states; quadratic memory, intended for desk-scale bases).
    Eigen::MatrixXcd density_matrix() const;

    double purity() const;

    /// tr(rho A) for Hermitian A; imaginary part discarded.
    double expectation(const SparseOp& op) const;
    /// tr(rho A^2) for Hermitian A.
    double second_moment(const SparseOp& op) const;
    double variance(const SparseOp& op) const;

    /// Frobenius mass of entries coupling different total-N blocks.
    double off_block_mass() const;
    bool block_diagonal(double tol = kBlockTol) const;

    /// Throws invalid_argument_error if norm/hermiticity/positivity/trace
    /// invariants are violated beyond tolerance.
    void check_invariants() const;

  private:
    TwoModeState() = default;

    BasisPtr basis_;
    bool pure_ = true;
    Eigen::VectorXcd amps_;
    Eigen::MatrixXcd rho_;
    double trace_tail_ = 0.0;
};

/// One fixed-N component of an incoherent decomposition: weight Q_N and the
/// normalized N-particle state as a dense matrix over `indices`, a subset of
/// the basis block (the subset may be a sub-range when the surrounding state
/// is known to vanish outside it).
struct BlockComponent {
    int total_n = 0;
    double weight = 0.0;
    std::vector<int> indices;
    Eigen::MatrixXcd state;
};

struct BlockSpectrum {
    BasisPtr basis;
    std::vector<BlockComponent> components;

    double total_weight() const;
    void check_invariants() const;
};

/// Projects onto fixed-N sectors: zeroes every inter-block coherence,
/// returning the mixed state sum_N Pi_N rho Pi_N.  Trace-preserving and
/// idempotent.
TwoModeState ssr_project(const TwoModeState& state);

/// Splits a block-diagonal state (tolerance kBlockTol on inter-block mass)
/// into weights Q_N and normalized per-block states.  Throws
/// not_incoherent_error when inter-block coherences exceed tolerance.
/// Blocks with weight <= weight_floor are dropped.
BlockSpectrum decompose_blocks(const TwoModeState& state,
                               double weight_floor = 0.0);

/// Block spectrum of ssr_project(state) computed without materializing the
/// projected density matrix.  For pure input each block is restricted to the
/// sub-range of occupations actually populated (plus margin), which keeps the
/// per-block matrices small at large cutoffs.
BlockSpectrum project_and_decompose(const TwoModeState& state,
                                    double weight_floor = 0.0);

/// Reassembles sum_N Q_N rho^(N) as a dense mixed state.
TwoModeState recompose(const BlockSpectrum& spectrum);

} // namespace qmetro
