#pragma once

#include <vector>

#include "qmetro/two_mode_state.hpp"

namespace qmetro {

inline constexpr double kPovmCompletenessTol = 1e-8;
inline constexpr double kPovmPositivityTol = -1e-10;

struct PovmElement {
    double label = 0.0;
    SparseOp op;
};

/// Finite positive-operator-valued measure: elements sum to the identity.
/// number_conserving marks POVMs whose every element is block-diagonal in
/// total N ("no number coherences").
struct Povm {
    BasisPtr basis;
    std::vector<PovmElement> elements;
    bool number_conserving = false;

    /// Completeness check only (cheap; used on hot paths).
    void check_completeness() const;
    /// Full validation: completeness, per-element positivity, and the
    /// number_conserving flag against actual block structure.
    void validate() const;

    /// Outcome probabilities tr[E(l) rho], in element order.  Negative
    /// round-off is clipped; throws numerical_inconsistency_error when the
    /// total deviates from 1 by 1e-8 or more, otherwise renormalizes.
    Eigen::VectorXd probabilities(const TwoModeState& state) const;
};

/// Projectors onto the eigenspaces of J_z; outcome label (n_a - n_b)/2.
Povm povm_number_difference(const BasisPtr& basis);

enum class Port { a, b };

/// Two-element parity measurement on one port; labels +1 (even), -1 (odd).
Povm povm_parity(const BasisPtr& basis, Port port);

/// Single-element identity POVM (no information).
Povm povm_trivial(const BasisPtr& basis);

} // namespace qmetro
