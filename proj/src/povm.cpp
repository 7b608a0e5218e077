#include "qmetro/povm.hpp"

#include <Eigen/Eigenvalues>
#include <map>

#include "qmetro/errors.hpp"

namespace qmetro {

void Povm::check_completeness() const {
    SparseOp sum(basis->dim(), basis->dim());
    for (const auto& e : elements) sum += e.op;
    SparseOp eye(basis->dim(), basis->dim());
    eye.setIdentity();
    if ((sum - eye).norm() > kPovmCompletenessTol)
        throw invalid_povm_error("POVM elements do not sum to the identity");
}

void Povm::validate() const {
    check_completeness();
    for (const auto& e : elements) {
        // diagonal elements: positivity is entrywise
        bool diagonal = true;
        for (int k = 0; k < e.op.outerSize() && diagonal; ++k)
            for (SparseOp::InnerIterator it(e.op, k); it; ++it)
                if (it.row() != it.col()) {
                    diagonal = false;
                    break;
                }
        if (diagonal) {
            for (int k = 0; k < e.op.outerSize(); ++k)
                for (SparseOp::InnerIterator it(e.op, k); it; ++it)
                    if (it.value().real() < kPovmPositivityTol ||
                        std::abs(it.value().imag()) > 1e-12)
                        throw invalid_povm_error("POVM element not positive semidefinite");
        } else {
            const Eigen::MatrixXcd dense = e.op.toDense();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < kPovmPositivityTol)
                throw invalid_povm_error("POVM element not positive semidefinite");
        }
        // flag consistency against actual block structure
        for (int k = 0; k < e.op.outerSize(); ++k)
            for (SparseOp::InnerIterator it(e.op, k); it; ++it)
                if (basis->total_number(it.row()) != basis->total_number(it.col()) &&
                    std::abs(it.value()) > 1e-10 && number_conserving)
                    throw invalid_povm_error(
                        "POVM flagged number-conserving but has inter-block entries");
    }
}

Eigen::VectorXd Povm::probabilities(const TwoModeState& state) const {
    Eigen::VectorXd p(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i)
        p[i] = std::max(0.0, state.expectation(elements[i].op));
    const double total = p.sum();
    if (std::abs(total - 1.0) >= 1e-8)
        throw numerical_inconsistency_error(
            "POVM outcome probabilities sum to " + std::to_string(total));
    return p / total;
}

Povm povm_number_difference(const BasisPtr& basis) {
    // group basis states by n_a - n_b; projectors are diagonal
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < basis->dim(); ++i) {
        auto [na, nb] = basis->occupation(i);
        groups[na - nb].push_back(i);
    }
    Povm povm;
    povm.basis = basis;
    povm.number_conserving = true;
    for (const auto& [diff, idx] : groups) {
        PovmElement e;
        e.label = 0.5 * diff;
        e.op.resize(basis->dim(), basis->dim());
        std::vector<Eigen::Triplet<Complex>> t;
        t.reserve(idx.size());
        for (int i : idx) t.emplace_back(i, i, Complex(1.0, 0.0));
        e.op.setFromTriplets(t.begin(), t.end());
        povm.elements.push_back(std::move(e));
    }
    return povm;
}

Povm povm_parity(const BasisPtr& basis, Port port) {
    Povm povm;
    povm.basis = basis;
    povm.number_conserving = true;
    std::vector<Eigen::Triplet<Complex>> even, odd;
    for (int i = 0; i < basis->dim(); ++i) {
        auto [na, nb] = basis->occupation(i);
        const int n = (port == Port::a) ? na : nb;
        (n % 2 == 0 ? even : odd).emplace_back(i, i, Complex(1.0, 0.0));
    }
    PovmElement e_even, e_odd;
    e_even.label = 1.0;
    e_odd.label = -1.0;
    e_even.op.resize(basis->dim(), basis->dim());
    e_odd.op.resize(basis->dim(), basis->dim());
    e_even.op.setFromTriplets(even.begin(), even.end());
    e_odd.op.setFromTriplets(odd.begin(), odd.end());
    povm.elements.push_back(std::move(e_even));
    povm.elements.push_back(std::move(e_odd));
    return povm;
}

Povm povm_trivial(const BasisPtr& basis) {
    Povm povm;
    povm.basis = basis;
    povm.number_conserving = true;
    PovmElement e;
    e.label = 0.0;
    e.op.resize(basis->dim(), basis->dim());
    e.op.setIdentity();
    povm.elements.push_back(std::move(e));
    return povm;
}

} // namespace qmetro
