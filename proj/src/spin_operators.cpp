#include "qmetro/spin_operators.hpp"

#include <cmath>
#include <vector>

#include "qmetro/errors.hpp"

namespace qmetro {

namespace {
using Triplet = Eigen::Triplet<Complex>;
} // namespace

SpinOperators::SpinOperators(BasisPtr basis) : basis_(std::move(basis)) {
    const auto& b = *basis_;
    const int dim = b.dim();
    const int c = b.cutoff();

    std::vector<Triplet> tx, ty, tz, tn;
    tz.reserve(dim);
    tn.reserve(dim);
    tx.reserve(2 * dim);
    ty.reserve(2 * dim);

    for (int na = 0; na <= c; ++na) {
        for (int nb = 0; nb <= c; ++nb) {
            const int i = b.index(na, nb);
            tz.emplace_back(i, i, Complex(0.5 * (na - nb), 0.0));
            tn.emplace_back(i, i, Complex(static_cast<double>(na + nb), 0.0));
            // a^dag b: |na, nb> -> sqrt((na+1) nb) |na+1, nb-1>
            if (na < c && nb > 0) {
                const double amp = std::sqrt(static_cast<double>(na + 1) * nb);
                const int j = b.index(na + 1, nb - 1);
                tx.emplace_back(j, i, Complex(0.5 * amp, 0.0));
                ty.emplace_back(j, i, Complex(0.0, -0.5 * amp));
            }
            // b^dag a: |na, nb> -> sqrt(na (nb+1)) |na-1, nb+1>
            if (na > 0 && nb < c) {
                const double amp = std::sqrt(static_cast<double>(na) * (nb + 1));
                const int j = b.index(na - 1, nb + 1);
                tx.emplace_back(j, i, Complex(0.5 * amp, 0.0));
                ty.emplace_back(j, i, Complex(0.0, 0.5 * amp));
            }
        }
    }

    jx_.resize(dim, dim);
    jy_.resize(dim, dim);
    jz_.resize(dim, dim);
    n_.resize(dim, dim);
    jx_.setFromTriplets(tx.begin(), tx.end());
    jy_.setFromTriplets(ty.begin(), ty.end());
    jz_.setFromTriplets(tz.begin(), tz.end());
    n_.setFromTriplets(tn.begin(), tn.end());
}

SparseOp SpinOperators::direction(const Vector3d& n) const {
    const double len = n.norm();
    if (len <= 0.0)
        throw invalid_argument_error("spin direction must be a nonzero vector");
    const Vector3d u = n / len;
    SparseOp j = u.x() * jx_ + u.y() * jy_ + u.z() * jz_;
    j.prune([](int, int, const Complex& v) { return std::norm(v) > 0.0; });
    return j;
}

Eigen::MatrixXcd SpinOperators::direction_block(const Vector3d& n,
                                                const std::vector<int>& indices) const {
    const double len = n.norm();
    if (len <= 0.0)
        throw invalid_argument_error("spin direction must be a nonzero vector");
    const Vector3d u = n / len;
    const auto& b = *basis_;
    const int s = static_cast<int>(indices.size());
    Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(s, s);
    for (int k = 0; k < s; ++k) {
        auto [na, nb] = b.occupation(indices[k]);
        blk(k, k) += Complex(u.z() * 0.5 * (na - nb), 0.0);
        // within a block ordered by ascending n_a the raising neighbour sits
        // at k+1
        if (k + 1 < s) {
            auto [ma, mb] = b.occupation(indices[k + 1]);
            if (ma == na + 1 && mb == nb - 1) {
                const double amp = 0.5 * std::sqrt(static_cast<double>(na + 1) * nb);
                blk(k + 1, k) += Complex(u.x() * amp, -u.y() * amp);
                blk(k, k + 1) += Complex(u.x() * amp, u.y() * amp);
            }
        }
    }
    return blk;
}

SpinFrame SpinFrame::from_axes(const Vector3d& n1, const Vector3d& n2) {
    SpinFrame f{n1.normalized(), n2.normalized(), n1.normalized().cross(n2.normalized())};
    f.check_invariants();
    return f;
}

SpinFrame SpinFrame::from_n3(const Vector3d& n3, const Vector3d& in_plane) {
    const Vector3d u3 = n3.normalized();
    Vector3d u1 = in_plane - in_plane.dot(u3) * u3;
    if (u1.norm() < 1e-12)
        throw invalid_argument_error("in-plane direction parallel to n3");
    u1.normalize();
    return SpinFrame{u1, u3.cross(u1), u3};
}

SpinFrame SpinFrame::mach_zehnder() {
    return SpinFrame{Vector3d(0, 0, -1), Vector3d(0, 1, 0), Vector3d(1, 0, 0)};
}

void SpinFrame::check_invariants() const {
    constexpr double tol = 1e-12;
    const bool unit = std::abs(n1.norm() - 1.0) < tol && std::abs(n2.norm() - 1.0) < tol &&
                      std::abs(n3.norm() - 1.0) < tol;
    const bool ortho = std::abs(n1.dot(n2)) < tol && std::abs(n2.dot(n3)) < tol &&
                       std::abs(n1.dot(n3)) < tol;
    const bool handed = (n1.cross(n2) - n3).norm() < tol;
    if (!unit || !ortho || !handed)
        throw invalid_argument_error("spin frame is not a right-handed orthonormal triple");
}

} // namespace qmetro
