#include "qmetro/qfi.hpp"

#include <Eigen/Eigenvalues>

#include "qmetro/errors.hpp"
#include "qmetro/estimation.hpp"

namespace qmetro {

namespace {

void require_hermitian(const SparseOp& g) {
    if (SparseOp(g - SparseOp(g.adjoint())).norm() > 1e-10)
        throw invalid_argument_error("generator must be Hermitian");
}

// Spectral double sum over precomputed eigenpairs of rho and the generator
// expressed in the eigenbasis, A = V^dag G V.
QfiResult spectral_sum(const Eigen::VectorXd& lam, const Eigen::MatrixXcd& a) {
    QfiResult res;
    const int d = static_cast<int>(lam.size());
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            const double sum = lam[k] + lam[l];
            const double w = std::norm(a(k, l));
            if (sum <= kQfiEigenvalueFloor) {
                res.discarded_weight += w;
                continue;
            }
            const double diff = lam[k] - lam[l];
            res.value += 2.0 * diff * diff / sum * w;
            ++res.spectral_terms_used;
        }
    }
    return res;
}

} // namespace

QfiSolver::QfiSolver(const TwoModeState& state) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(state.density_matrix());
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
}

QfiResult QfiSolver::qfi(const Eigen::MatrixXcd& generator) const {
    const Eigen::MatrixXcd a = eigenvectors_.adjoint() * generator * eigenvectors_;
    return spectral_sum(eigenvalues_, a);
}

QfiResult QfiSolver::qfi(const SparseOp& generator) const {
    require_hermitian(generator);
    const Eigen::MatrixXcd a = eigenvectors_.adjoint() * (generator * eigenvectors_);
    return spectral_sum(eigenvalues_, a);
}

QfiResult qfi_pure(const TwoModeState& state, const SparseOp& generator) {
    if (!state.is_pure())
        throw invalid_argument_error("qfi_pure requires a pure state");
    require_hermitian(generator);
    QfiResult res;
    const Eigen::VectorXcd gpsi = generator * state.amplitudes();
    const double mean = std::real(state.amplitudes().dot(gpsi));
    res.value = 4.0 * (gpsi.squaredNorm() - mean * mean);
    res.spectral_terms_used = 0;
    res.discarded_weight = 0.0;
    return res;
}

QfiResult qfi_mixed(const TwoModeState& state, const SparseOp& generator) {
    require_hermitian(generator);
    QfiSolver solver(state);
    return solver.qfi(generator);
}

QfiResult qfi_block_diagonal(const BlockSpectrum& spectrum, const SpinOperators& ops,
                             const Vector3d& direction) {
    QfiResult total;
    for (const auto& comp : spectrum.components) {
        if (comp.weight <= 0.0) continue;
        const Eigen::MatrixXcd jblk = ops.direction_block(direction, comp.indices);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(comp.state);
        const Eigen::MatrixXcd a = es.eigenvectors().adjoint() * jblk * es.eigenvectors();
        const QfiResult blk = spectral_sum(es.eigenvalues(), a);
        total.value += comp.weight * blk.value;
        total.spectral_terms_used += blk.spectral_terms_used;
        total.discarded_weight += comp.weight * blk.discarded_weight;
    }
    return total;
}

QfiResult qfi_auto(const TwoModeState& state, const SpinOperators& ops,
                   const Vector3d& direction) {
    if (state.is_pure()) return qfi_pure(state, ops.direction(direction));
    if (state.block_diagonal())
        return qfi_block_diagonal(decompose_blocks(state), ops, direction);
    return qfi_mixed(state, ops.direction(direction));
}

namespace {

Eigen::VectorXd outcome_probs(const TwoModeState& state, const Rotation& rot,
                              double theta, const Povm& povm) {
    return povm.probabilities(rot.apply(state, theta));
}

} // namespace

double classical_fisher(const TwoModeState& state, const SpinOperators& ops,
                        const Vector3d& direction, double theta, const Povm& povm,
                        double dtheta) {
    if (dtheta <= 0.0) throw invalid_argument_error("classical_fisher: dtheta must be > 0");
    povm.check_completeness();
    Rotation rot(ops, direction);
    const Eigen::VectorXd p0 = outcome_probs(state, rot, theta, povm);
    const Eigen::VectorXd pp = outcome_probs(state, rot, theta + dtheta, povm);
    const Eigen::VectorXd pm = outcome_probs(state, rot, theta - dtheta, povm);
    double fisher = 0.0;
    for (int i = 0; i < p0.size(); ++i) {
        if (p0[i] < 1e-12) continue;
        const double dp = (pp[i] - pm[i]) / (2.0 * dtheta);
        fisher += dp * dp / p0[i];
    }
    return fisher;
}

double classical_fisher_richardson(const TwoModeState& state, const SpinOperators& ops,
                                   const Vector3d& direction, double theta,
                                   const Povm& povm, double dtheta) {
    if (dtheta <= 0.0) throw invalid_argument_error("classical_fisher: dtheta must be > 0");
    povm.check_completeness();
    Rotation rot(ops, direction);
    const Eigen::VectorXd p0 = outcome_probs(state, rot, theta, povm);
    const Eigen::VectorXd pp1 = outcome_probs(state, rot, theta + dtheta, povm);
    const Eigen::VectorXd pm1 = outcome_probs(state, rot, theta - dtheta, povm);
    const Eigen::VectorXd pp2 = outcome_probs(state, rot, theta + 0.5 * dtheta, povm);
    const Eigen::VectorXd pm2 = outcome_probs(state, rot, theta - 0.5 * dtheta, povm);
    double fisher = 0.0;
    for (int i = 0; i < p0.size(); ++i) {
        if (p0[i] < 1e-12) continue;
        const double d1 = (pp1[i] - pm1[i]) / (2.0 * dtheta);
        const double d2 = (pp2[i] - pm2[i]) / dtheta;
        const double dp = (4.0 * d2 - d1) / 3.0;
        fisher += dp * dp / p0[i];
    }
    return fisher;
}

} // namespace qmetro
