#include <doctest.h>

#include <Eigen/Dense>
#include <set>

#include "qmetro/errors.hpp"
#include "qmetro/fock_basis.hpp"
#include "qmetro/rng.hpp"
#include "qmetro/spin_operators.hpp"

using namespace qmetro;

TEST_CASE("basis dimension and block layout") {
    FockBasis b1(1);
    CHECK(b1.dim() == 4);
    CHECK(b1.block(0).size() == 1);
    CHECK(b1.block(1).size() == 2);
    CHECK(b1.block(2).size() == 1);

    FockBasis b3(3);
    CHECK(b3.dim() == 16);

    FockBasis b2(2);
    const auto& blk = b2.block(2);
    REQUIRE(blk.size() == 3);
    CHECK(b2.occupation(blk[0]) == std::pair<int, int>(0, 2));
    CHECK(b2.occupation(blk[1]) == std::pair<int, int>(1, 1));
    CHECK(b2.occupation(blk[2]) == std::pair<int, int>(2, 0));
}

TEST_CASE("blocks partition the basis") {
    FockBasis b(5);
    std::set<int> seen;
    for (int n = 0; n < b.block_count(); ++n)
        for (int i : b.block(n)) {
            CHECK(seen.insert(i).second);  // no index twice
            CHECK(b.total_number(i) == n);
        }
    CHECK(static_cast<int>(seen.size()) == b.dim());
}

TEST_CASE("index map is a lexicographic bijection") {
    FockBasis b(4);
    int expected = 0;
    for (int na = 0; na <= 4; ++na)
        for (int nb = 0; nb <= 4; ++nb) {
            CHECK(b.index(na, nb) == expected);
            CHECK(b.occupation(expected) == std::pair<int, int>(na, nb));
            ++expected;
        }
}

TEST_CASE("cutoff below 1 rejected") {
    CHECK_THROWS_AS(FockBasis(0), invalid_argument_error);
    CHECK_THROWS_AS(FockBasis(-3), invalid_argument_error);
}

TEST_CASE("N=1 block carries the Pauli halves") {
    auto basis = make_basis(3);
    SpinOperators ops(basis);
    const auto& blk = basis->block(1);  // |0,1>, |1,0>
    const Eigen::MatrixXcd jx = ops.direction_block(Vector3d(1, 0, 0), blk);
    const Eigen::MatrixXcd jy = ops.direction_block(Vector3d(0, 1, 0), blk);
    const Eigen::MatrixXcd jz = ops.direction_block(Vector3d(0, 0, 1), blk);

    // in the (|0,1>, |1,0>) ordering J_z = diag(-1/2, +1/2)
    CHECK(std::abs(jz(0, 0) - Complex(-0.5, 0)) < 1e-14);
    CHECK(std::abs(jz(1, 1) - Complex(0.5, 0)) < 1e-14);
    CHECK(std::abs(jx(0, 1) - Complex(0.5, 0)) < 1e-14);
    CHECK(std::abs(jx(1, 0) - Complex(0.5, 0)) < 1e-14);
    CHECK(std::abs(jy(1, 0) - Complex(0, -0.5)) < 1e-14);  // <1,0|Jy|0,1>
    CHECK(std::abs(jy(0, 1) - Complex(0, 0.5)) < 1e-14);
}

TEST_CASE("J_z diagonal matches (n_a - n_b)/2") {
    auto basis = make_basis(3);
    SpinOperators ops(basis);
    const Eigen::MatrixXcd jz = ops.jz().toDense();
    const int i20 = basis->index(2, 0);
    CHECK(std::abs(jz(i20, i20) - Complex(1.0, 0.0)) < 1e-14);
    const int i13 = basis->index(1, 3);
    CHECK(std::abs(jz(i13, i13) - Complex(-1.0, 0.0)) < 1e-14);
}

TEST_CASE("spin operators are Hermitian, block diagonal, commute with N") {
    auto basis = make_basis(4);
    SpinOperators ops(basis);
    for (const auto* op : {&ops.jx(), &ops.jy(), &ops.jz()}) {
        const Eigen::MatrixXcd d = op->toDense();
        CHECK((d - d.adjoint()).norm() < 1e-12);
        const Eigen::MatrixXcd n = ops.number().toDense();
        CHECK((d * n - n * d).norm() < 1e-10);
        for (int j = 0; j < basis->dim(); ++j)
            for (int i = 0; i < basis->dim(); ++i)
                if (basis->total_number(i) != basis->total_number(j))
                    CHECK(std::abs(d(i, j)) == 0.0);
    }
}

TEST_CASE("commutator algebra [Jx,Jy] = i Jz on complete blocks") {
    auto basis = make_basis(5);
    SpinOperators ops(basis);
    const Eigen::MatrixXcd jx = ops.jx().toDense();
    const Eigen::MatrixXcd jy = ops.jy().toDense();
    const Eigen::MatrixXcd jz = ops.jz().toDense();
    const Eigen::MatrixXcd comm = jx * jy - jy * jx;
    const Eigen::MatrixXcd expect = Complex(0, 1) * jz;
    // truncated blocks (N > cutoff) lose the ladder identities at the missing
    // corners, so restrict the check to complete blocks
    for (int n = 0; n <= basis->cutoff(); ++n)
        for (int j : basis->block(n))
            for (int i : basis->block(n)) CHECK(std::abs(comm(i, j) - expect(i, j)) < 1e-12);
}

TEST_CASE("J^2 on complete blocks is the spin-N/2 Casimir") {
    auto basis = make_basis(4);
    SpinOperators ops(basis);
    const Eigen::MatrixXcd j2 = (ops.jx().toDense() * ops.jx().toDense()) +
                                (ops.jy().toDense() * ops.jy().toDense()) +
                                (ops.jz().toDense() * ops.jz().toDense());
    for (int n = 0; n <= basis->cutoff(); ++n) {
        const double spin = 0.5 * n;
        for (int i : basis->block(n))
            CHECK(std::abs(j2(i, i).real() - spin * (spin + 1.0)) < 1e-12);
    }
}

TEST_CASE("[J_n, N] = 0 for random directions") {
    auto basis = make_basis(4);
    SpinOperators ops(basis);
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        Vector3d n(rng.normal(), rng.normal(), rng.normal());
        if (n.norm() < 1e-6) continue;
        const Eigen::MatrixXcd jn = ops.direction(n).toDense();
        const Eigen::MatrixXcd nn = ops.number().toDense();
        CHECK((jn * nn - nn * jn).norm() < 1e-10);
    }
}

TEST_CASE("direction_block agrees with the sparse restriction") {
    auto basis = make_basis(5);
    SpinOperators ops(basis);
    Rng rng(3);
    for (int t = 0; t < 5; ++t) {
        Vector3d n(rng.normal(), rng.normal(), rng.normal());
        n.normalize();
        const Eigen::MatrixXcd full = ops.direction(n).toDense();
        for (int blk = 0; blk < basis->block_count(); ++blk) {
            const auto& idx = basis->block(blk);
            const Eigen::MatrixXcd sub = ops.direction_block(n, idx);
            for (std::size_t j = 0; j < idx.size(); ++j)
                for (std::size_t i = 0; i < idx.size(); ++i)
                    CHECK(std::abs(sub(i, j) - full(idx[i], idx[j])) < 1e-13);
        }
    }
}

TEST_CASE("frames: validation and defaults") {
    const SpinFrame mz = SpinFrame::mach_zehnder();
    mz.check_invariants();
    CHECK((mz.n2 - Vector3d(0, 1, 0)).norm() < 1e-15);
    CHECK((mz.n3 - Vector3d(1, 0, 0)).norm() < 1e-15);

    CHECK_THROWS_AS(SpinFrame::from_axes(Vector3d(1, 0, 0), Vector3d(1, 0, 0)),
                    invalid_argument_error);
    const SpinFrame f = SpinFrame::from_n3(Vector3d(0, 0, 1), Vector3d(1, 1, 0));
    f.check_invariants();
    CHECK(std::abs(f.n3.dot(f.n1)) < 1e-14);
}
