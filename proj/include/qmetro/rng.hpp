#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace qmetro {

/// Seedable random source threaded explicitly through every stochastic
/// operation.  The distributions are implemented here rather than taken
/// from <random> so that a fixed seed gives bit-identical streams on any
/// standard library (mt19937_64 itself is fully specified, the std::
/// distributions are not).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Independent per-trial stream, reproducible from (seed, trial).
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
        return Rng(splitmix64(splitmix64(seed) + 0x9e3779b97f4a7c15ULL * (trial + 1)));
    }

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(6.283185307179586476925287 * u2);
        have_spare_ = true;
        return mag * std::cos(6.283185307179586476925287 * u2);
    }

    /// Uniform integer in [0, n).
    std::uint64_t integer(std::uint64_t n) {
        // Rejection-free modulo bias is irrelevant at our n << 2^64 scales,
        // but reject anyway to keep the stream well defined.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = gen_();
        while (x >= limit) x = gen_();
        return x % n;
    }

    /// Random point on the unit simplex of given dimension.
    std::vector<double> simplex(std::size_t dim) {
        std::vector<double> w(dim);
        double total = 0.0;
        for (auto& x : w) {
            double u = uniform();
            while (u <= 0.0) u = uniform();
            x = -std::log(u);
            total += x;
        }
        for (auto& x : w) x /= total;
        return w;
    }

  private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace qmetro
