#pragma once

#include <Eigen/Dense>

#include "qmetro/two_mode_state.hpp"

namespace qmetro {

using Eigen::Vector3d;

/// Collective spin in the two-mode (Schwinger) form,
///   J_x = (a^dag b + b^dag a)/2,  J_y = (a^dag b - b^dag a)/2i,
///   J_z = (a^dag a - b^dag b)/2,
/// together with the total number operator.  All four commute with N and
/// are block-diagonal in the total-number blocks of the basis.
class SpinOperators {
  public:
    explicit SpinOperators(BasisPtr basis);

    const BasisPtr& basis() const { return basis_; }
    const SparseOp& jx() const { return jx_; }
    const SparseOp& jy() const { return jy_; }
    const SparseOp& jz() const { return jz_; }
    const SparseOp& number() const { return n_; }

    /// J_n = n . J for a direction vector (normalized internally).
    SparseOp direction(const Vector3d& n) const;

    /// Dense restriction of J_n to the rows/columns `indices` (any subset of
    /// one N-block).
    Eigen::MatrixXcd direction_block(const Vector3d& n,
                                     const std::vector<int>& indices) const;

  private:
    BasisPtr basis_;
    SparseOp jx_, jy_, jz_, n_;
};

/// Right-handed orthonormal triple (n1, n2, n3).
struct SpinFrame {
    Vector3d n1, n2, n3;

    /// Validates orthonormality and handedness to 1e-12.
    static SpinFrame from_axes(const Vector3d& n1, const Vector3d& n2);

    /// Builds the frame from n3 and any in-plane direction for n1.
    static SpinFrame from_n3(const Vector3d& n3, const Vector3d& in_plane);

    /// Mach-Zehnder convention: rotation axis n2 = y, squeezing axis n3 = x,
    /// hence n1 = -z.
    static SpinFrame mach_zehnder();

    void check_invariants() const;
};

} // namespace qmetro
