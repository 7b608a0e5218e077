#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace qmetro {

/// Truncated two-mode Fock basis |n_a, n_b> with 0 <= n_a, n_b <= cutoff.
/// Basis index runs lexicographically in (n_a, n_b), so
/// index = n_a * (cutoff+1) + n_b and the dimension is (cutoff+1)^2.
/// Indices are additionally grouped into blocks of fixed total number
/// N = n_a + n_b; the blocks partition the basis.
class FockBasis {
  public:
    explicit FockBasis(int cutoff);

    int cutoff() const { return cutoff_; }
    int dim() const { return (cutoff_ + 1) * (cutoff_ + 1); }
    int max_total() const { return 2 * cutoff_; }

    int index(int n_a, int n_b) const { return n_a * (cutoff_ + 1) + n_b; }
    std::pair<int, int> occupation(int index) const {
        return {index / (cutoff_ + 1), index % (cutoff_ + 1)};
    }
    int total_number(int index) const {
        auto [na, nb] = occupation(index);
        return na + nb;
    }

    /// Basis indices of the N-block, ordered by ascending n_a.
    const std::vector<int>& block(int total_n) const { return blocks_.at(total_n); }
    int block_count() const { return static_cast<int>(blocks_.size()); }

    /// Blocks with N > cutoff miss occupations beyond the per-mode cutoff;
    /// only complete blocks carry a full spin-N/2 representation.
    bool block_complete(int total_n) const { return total_n <= cutoff_; }

    bool operator==(const FockBasis& other) const { return cutoff_ == other.cutoff_; }

  private:
    int cutoff_;
    std::vector<std::vector<int>> blocks_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr make_basis(int cutoff);

} // namespace qmetro
