#include "qmetro/fock_basis.hpp"

#include "qmetro/errors.hpp"

namespace qmetro {

FockBasis::FockBasis(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 1)
        throw invalid_argument_error("FockBasis: cutoff must be >= 1, got " +
                                     std::to_string(cutoff));
    blocks_.resize(2 * cutoff + 1);
    for (int n = 0; n <= 2 * cutoff; ++n) {
        const int lo = std::max(0, n - cutoff);
        const int hi = std::min(n, cutoff);
        blocks_[n].reserve(hi - lo + 1);
        for (int na = lo; na <= hi; ++na) blocks_[n].push_back(index(na, n - na));
    }
}

BasisPtr make_basis(int cutoff) { return std::make_shared<const FockBasis>(cutoff); }

} // namespace qmetro
