#include "qmetro/two_mode_state.hpp"

#include <Eigen/Eigenvalues>

#include "qmetro/errors.hpp"

namespace qmetro {

TwoModeState TwoModeState::pure(BasisPtr basis, Eigen::VectorXcd amplitudes,
                                double trace_tail) {
    TwoModeState s;
    s.basis_ = std::move(basis);
    s.pure_ = true;
    s.amps_ = std::move(amplitudes);
    s.trace_tail_ = trace_tail;
    if (s.amps_.size() != s.basis_->dim())
        throw invalid_argument_error("pure state: amplitude vector has dimension " +
                                     std::to_string(s.amps_.size()) + ", basis needs " +
                                     std::to_string(s.basis_->dim()));
    const double norm = s.amps_.norm();
    if (std::abs(norm - 1.0) > kStateTol)
        throw invalid_argument_error("pure state: norm deviates from 1 by " +
                                     std::to_string(std::abs(norm - 1.0)));
    return s;
}

TwoModeState TwoModeState::mixed(BasisPtr basis, Eigen::MatrixXcd density,
                                 double trace_tail) {
    TwoModeState s;
    s.basis_ = std::move(basis);
    s.pure_ = false;
    s.rho_ = std::move(density);
    s.trace_tail_ = trace_tail;
    if (s.rho_.rows() != s.basis_->dim() || s.rho_.cols() != s.basis_->dim())
        throw invalid_argument_error("mixed state: density matrix shape mismatch");
    if ((s.rho_ - s.rho_.adjoint()).norm() > kStateTol)
        throw invalid_argument_error("mixed state: density matrix not Hermitian");
    if (std::abs(s.rho_.trace().real() - 1.0) > kStateTol ||
        std::abs(s.rho_.trace().imag()) > kStateTol)
        throw invalid_argument_error("mixed state: trace deviates from 1");
    return s;
}

const Eigen::VectorXcd& TwoModeState::amplitudes() const {
    if (!pure_) throw invalid_argument_error("amplitudes() called on mixed state");
    return amps_;
}

const Eigen::MatrixXcd& TwoModeState::density() const {
    if (pure_) throw invalid_argument_error("density() called on pure state");
    return rho_;
}

Eigen::MatrixXcd TwoModeState::density_matrix() const {
    if (pure_) return amps_ * amps_.adjoint();
    return rho_;
}

double TwoModeState::purity() const {
    if (pure_) return 1.0;
    return rho_.squaredNorm();  // tr(rho^2) for Hermitian rho
}

double TwoModeState::expectation(const SparseOp& op) const {
    if (pure_) return std::real(amps_.dot(op * amps_));
    return std::real((op * rho_).eval().trace());
}

double TwoModeState::second_moment(const SparseOp& op) const {
    if (pure_) return (op * amps_).squaredNorm();
    const Eigen::MatrixXcd tmp = op * rho_;
    return std::real((op * tmp).eval().trace());
}

double TwoModeState::variance(const SparseOp& op) const {
    const double mean = expectation(op);
    return second_moment(op) - mean * mean;
}

double TwoModeState::off_block_mass() const {
    const auto& b = *basis_;
    double mass = 0.0;
    if (pure_) {
        // |psi><psi| off-block Frobenius mass: sum over pairs of blocks
        // of |a_i|^2 |a_j|^2 with N_i != N_j.
        std::vector<double> block_norm2(b.block_count(), 0.0);
        for (int i = 0; i < amps_.size(); ++i)
            block_norm2[b.total_number(i)] += std::norm(amps_[i]);
        double total = 0.0, sq = 0.0;
        for (double w : block_norm2) {
            total += w;
            sq += w * w;
        }
        mass = total * total - sq;
    } else {
        for (int j = 0; j < rho_.cols(); ++j) {
            const int nj = b.total_number(j);
            for (int i = 0; i < rho_.rows(); ++i)
                if (b.total_number(i) != nj) mass += std::norm(rho_(i, j));
        }
    }
    return std::sqrt(std::max(0.0, mass));
}

bool TwoModeState::block_diagonal(double tol) const { return off_block_mass() <= tol; }

void TwoModeState::check_invariants() const {
    if (pure_) {
        if (std::abs(amps_.norm() - 1.0) > kStateTol)
            throw invalid_argument_error("pure state norm invariant violated");
        return;
    }
    if ((rho_ - rho_.adjoint()).norm() > kStateTol)
        throw invalid_argument_error("hermiticity invariant violated");
    if (std::abs(rho_.trace().real() - 1.0) > kStateTol)
        throw invalid_argument_error("trace invariant violated");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kStateTol)
        throw invalid_argument_error("positivity invariant violated: min eigenvalue " +
                                     std::to_string(es.eigenvalues().minCoeff()));
}

double BlockSpectrum::total_weight() const {
    double w = 0.0;
    for (const auto& c : components) w += c.weight;
    return w;
}

void BlockSpectrum::check_invariants() const {
    if (std::abs(total_weight() - 1.0) > kStateTol)
        throw invalid_argument_error("block weights do not sum to 1");
    for (const auto& c : components) {
        if (c.weight < 0.0)
            throw invalid_argument_error("negative block weight");
        if (std::abs(c.state.trace().real() - 1.0) > kStateTol)
            throw invalid_argument_error("block state trace deviates from 1");
        for (int idx : c.indices)
            if (basis->total_number(idx) != c.total_n)
                throw invalid_argument_error("block component index outside its N-block");
    }
}

TwoModeState ssr_project(const TwoModeState& state) {
    const auto& b = *state.basis();
    Eigen::MatrixXcd rho = state.density_matrix();
    for (int j = 0; j < rho.cols(); ++j) {
        const int nj = b.total_number(j);
        for (int i = 0; i < rho.rows(); ++i)
            if (b.total_number(i) != nj) rho(i, j) = Complex(0.0, 0.0);
    }
    return TwoModeState::mixed(state.basis(), std::move(rho), state.trace_tail());
}

BlockSpectrum decompose_blocks(const TwoModeState& state, double weight_floor) {
    const double off = state.off_block_mass();
    if (off > kBlockTol)
        throw not_incoherent_error(
            "decompose_blocks: inter-block coherence mass " + std::to_string(off) +
            " exceeds tolerance");
    return project_and_decompose(state, weight_floor);
}

BlockSpectrum project_and_decompose(const TwoModeState& state, double weight_floor) {
    const auto& b = *state.basis();
    BlockSpectrum spec;
    spec.basis = state.basis();

    for (int n = 0; n < b.block_count(); ++n) {
        const auto& block = b.block(n);
        BlockComponent comp;
        comp.total_n = n;

        if (state.is_pure()) {
            const auto& amps = state.amplitudes();
            double w = 0.0;
            for (int idx : block) w += std::norm(amps[idx]);
            if (w <= weight_floor || w <= 0.0) continue;
            // Restrict to occupations carrying relative weight (threshold far
            // below any tolerance we test at) so blocks stay small at large
            // cutoffs.
            int lo = -1, hi = -1;
            for (int k = 0; k < static_cast<int>(block.size()); ++k) {
                if (std::norm(amps[block[k]]) > 1e-28 * w) {
                    if (lo < 0) lo = k;
                    hi = k;
                }
            }
            if (lo < 0) continue;
            lo = std::max(0, lo - 1);
            hi = std::min(static_cast<int>(block.size()) - 1, hi + 1);
            comp.weight = w;
            comp.indices.assign(block.begin() + lo, block.begin() + hi + 1);
            Eigen::VectorXcd v(comp.indices.size());
            for (std::size_t k = 0; k < comp.indices.size(); ++k)
                v[k] = amps[comp.indices[k]];
            v /= std::sqrt(w);
            comp.state = v * v.adjoint();
        } else {
            const auto& rho = state.density();
            Eigen::MatrixXcd sub(block.size(), block.size());
            for (std::size_t j = 0; j < block.size(); ++j)
                for (std::size_t i = 0; i < block.size(); ++i)
                    sub(i, j) = rho(block[i], block[j]);
            const double w = sub.trace().real();
            if (w <= weight_floor || w <= 0.0) continue;
            comp.weight = w;
            comp.indices = block;
            comp.state = sub / w;
        }
        spec.components.push_back(std::move(comp));
    }
    return spec;
}

TwoModeState recompose(const BlockSpectrum& spectrum) {
    const int dim = spectrum.basis->dim();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& c : spectrum.components)
        for (std::size_t j = 0; j < c.indices.size(); ++j)
            for (std::size_t i = 0; i < c.indices.size(); ++i)
                rho(c.indices[i], c.indices[j]) += c.weight * c.state(i, j);
    return TwoModeState::mixed(spectrum.basis, std::move(rho));
}

} // namespace qmetro
