#include "qmetro/states.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qmetro/errors.hpp"

namespace qmetro {

namespace {

// Poisson weights e^{-mu} mu^n / n! for n = 0..cutoff.
std::vector<double> poisson_weights(double mu, int cutoff) {
    std::vector<double> w(cutoff + 1);
    w[0] = std::exp(-mu);
    for (int n = 0; n < cutoff; ++n) w[n + 1] = w[n] * mu / (n + 1);
    return w;
}

// Squeezed-vacuum weights (zero at odd n).
std::vector<double> squeezed_weights(double r, int cutoff) {
    std::vector<double> w(cutoff + 1, 0.0);
    const double t2 = std::tanh(r) * std::tanh(r);
    double p = 1.0 / std::cosh(r);
    for (int n = 0; 2 * n <= cutoff; ++n) {
        w[2 * n] = p;
        p *= t2 * (2.0 * n + 1.0) / (2.0 * n + 2.0);
    }
    return w;
}

double tail_of(const std::vector<double>& weights) {
    double s = 0.0;
    for (double p : weights) s += p;
    return std::max(0.0, 1.0 - s);
}

} // namespace

double coherent_tail(double alpha_mag, int cutoff) {
    return tail_of(poisson_weights(alpha_mag * alpha_mag, cutoff));
}

double squeezed_tail(double r, int cutoff) {
    return tail_of(squeezed_weights(r, cutoff));
}

int required_cutoff_coherent(double alpha_mag, double threshold, int cap) {
    for (int c = 1; c <= cap; ++c)
        if (coherent_tail(alpha_mag, c) < threshold) return c;
    throw truncation_error("coherent state |alpha|^2 = " +
                               std::to_string(alpha_mag * alpha_mag) +
                               " does not fit the cutoff cap " + std::to_string(cap),
                           cap + 1);
}

int required_cutoff_squeezed(double r, double threshold, int cap) {
    for (int c = 1; c <= cap; ++c)
        if (squeezed_tail(r, c) < threshold) return c;
    throw truncation_error("squeezed vacuum r = " + std::to_string(r) +
                               " does not fit the cutoff cap " + std::to_string(cap),
                           cap + 1);
}

int auto_cutoff(const CavesParams& p, double threshold, int cap) {
    return std::max(required_cutoff_coherent(p.alpha_mag, threshold, cap),
                    required_cutoff_squeezed(p.r, threshold, cap));
}

Eigen::VectorXcd coherent_amplitudes(std::complex<double> alpha, int cutoff,
                                     double tail_threshold, double* tail_out) {
    const double mag = std::abs(alpha);
    const double tail = coherent_tail(mag, cutoff);
    if (tail >= tail_threshold)
        throw truncation_error(
            "coherent state tail " + std::to_string(tail) + " exceeds threshold; needs cutoff >= " +
                std::to_string(required_cutoff_coherent(mag, tail_threshold, 4096)),
            required_cutoff_coherent(mag, tail_threshold, 4096));
    Eigen::VectorXcd c(cutoff + 1);
    c[0] = std::exp(-0.5 * mag * mag);
    for (int n = 0; n < cutoff; ++n) c[n + 1] = c[n] * alpha / std::sqrt(n + 1.0);
    c /= c.norm();
    if (tail_out) *tail_out = tail;
    return c;
}

Eigen::VectorXcd squeezed_vacuum_amplitudes(std::complex<double> zeta, int cutoff,
                                            double tail_threshold, double* tail_out) {
    const double r = std::abs(zeta);
    const double theta = std::arg(zeta);
    const double tail = squeezed_tail(r, cutoff);
    if (tail >= tail_threshold)
        throw truncation_error(
            "squeezed vacuum tail " + std::to_string(tail) + " exceeds threshold; needs cutoff >= " +
                std::to_string(required_cutoff_squeezed(r, tail_threshold, 4096)),
            required_cutoff_squeezed(r, tail_threshold, 4096));
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cutoff + 1);
    const Complex factor = -std::polar(std::tanh(r), theta);
    Complex amp = Complex(1.0 / std::sqrt(std::cosh(r)), 0.0);
    for (int n = 0; 2 * n <= cutoff; ++n) {
        c[2 * n] = amp;
        amp *= factor * std::sqrt((2.0 * n + 1.0) / (2.0 * n + 2.0));
    }
    c /= c.norm();
    if (tail_out) *tail_out = tail;
    return c;
}

TwoModeState product_state(const BasisPtr& basis, const Eigen::VectorXcd& mode_a,
                           const Eigen::VectorXcd& mode_b, double trace_tail) {
    const int c = basis->cutoff();
    if (mode_a.size() != c + 1 || mode_b.size() != c + 1)
        throw invalid_argument_error("product_state: mode vectors must have cutoff+1 entries");
    Eigen::VectorXcd psi(basis->dim());
    for (int na = 0; na <= c; ++na)
        for (int nb = 0; nb <= c; ++nb) psi[basis->index(na, nb)] = mode_a[na] * mode_b[nb];
    psi /= psi.norm();
    return TwoModeState::pure(basis, std::move(psi), trace_tail);
}

TwoModeState caves_state(const CavesParams& params, const BasisPtr& basis,
                         double tail_threshold) {
    double tail_a = 0.0, tail_b = 0.0;
    const auto a = coherent_amplitudes(params.alpha(), basis->cutoff(), tail_threshold, &tail_a);
    const auto b = squeezed_vacuum_amplitudes(std::polar(params.r, params.theta_zeta),
                                              basis->cutoff(), tail_threshold, &tail_b);
    // combined discarded mass, to first order in the tails
    return product_state(basis, a, b, tail_a + tail_b - tail_a * tail_b);
}

TwoModeState fock_state(const BasisPtr& basis, int n_a, int n_b) {
    if (n_a < 0 || n_b < 0 || n_a > basis->cutoff() || n_b > basis->cutoff())
        throw invalid_argument_error("fock_state: occupation outside basis");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis->dim());
    psi[basis->index(n_a, n_b)] = Complex(1.0, 0.0);
    return TwoModeState::pure(basis, std::move(psi));
}

TwoModeState noon_state(const BasisPtr& basis, int n) {
    if (n < 1 || n > basis->cutoff())
        throw invalid_argument_error("noon_state: N outside basis");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis->dim());
    psi[basis->index(n, 0)] = Complex(M_SQRT1_2, 0.0);
    psi[basis->index(0, n)] = Complex(M_SQRT1_2, 0.0);
    return TwoModeState::pure(basis, std::move(psi));
}

namespace {

// Amplitudes of the N-particle symmetric state with all particles in
// c_a |a> + c_b |b>:  psi(n_a) = sqrt(C(N, n_a)) c_a^{n_a} c_b^{N-n_a}.
// Evaluated in log space so extreme Bloch angles do not underflow.
Eigen::VectorXcd spin_coherent_block(int n, Complex c_a, Complex c_b) {
    const double la = std::abs(c_a) > 0.0 ? std::log(std::abs(c_a)) : -1e308;
    const double lb = std::abs(c_b) > 0.0 ? std::log(std::abs(c_b)) : -1e308;
    const double pa = std::arg(c_a), pb = std::arg(c_b);
    const double lgn = std::lgamma(n + 1.0);
    Eigen::VectorXd logmag(n + 1);
    double top = -1e308;
    for (int k = 0; k <= n; ++k) {
        const double lbinom =
            0.5 * (lgn - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
        logmag[k] = lbinom + k * la + (n - k) * lb;
        top = std::max(top, logmag[k]);
    }
    Eigen::VectorXcd v(n + 1);
    for (int k = 0; k <= n; ++k)
        v[k] = std::polar(std::exp(logmag[k] - top), k * pa + (n - k) * pb);
    v /= v.norm();
    return v;
}

} // namespace

TwoModeState spin_coherent_state(const BasisPtr& basis, int n, double bloch_theta,
                                 double bloch_phi) {
    if (n < 1 || n > basis->cutoff())
        throw invalid_argument_error("spin_coherent_state: N must satisfy 1 <= N <= cutoff");
    const auto blk = spin_coherent_block(n, Complex(std::cos(0.5 * bloch_theta), 0.0),
                                         std::polar(std::sin(0.5 * bloch_theta), bloch_phi));
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis->dim());
    for (int na = 0; na <= n; ++na) psi[basis->index(na, n - na)] = blk[na];
    return TwoModeState::pure(basis, std::move(psi));
}

TwoModeState symmetrized_product_state(
    const BasisPtr& basis,
    const std::vector<std::pair<Complex, Complex>>& particles) {
    const int n = static_cast<int>(particles.size());
    if (n < 1 || n > basis->cutoff())
        throw invalid_argument_error("symmetrized_product_state: 1 <= N <= cutoff required");
    // coefficient of a^dag^{n_a} b^dag^{n_b} in prod_j (c_a^j a^dag + c_b^j b^dag)
    std::vector<Complex> poly{Complex(1.0, 0.0)};
    for (const auto& [ca, cb] : particles) {
        std::vector<Complex> next(poly.size() + 1, Complex(0.0, 0.0));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k] * cb;
            next[k + 1] += poly[k] * ca;
        }
        poly = std::move(next);
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis->dim());
    double lg_n = std::lgamma(n + 1.0);
    for (int na = 0; na <= n; ++na) {
        // a^dag^{na} b^dag^{nb} |0> = sqrt(na! nb!) |na, nb>
        const double fac = std::exp(0.5 * (std::lgamma(na + 1.0) +
                                           std::lgamma(n - na + 1.0) - lg_n));
        // lgamma(n+1) factor only rescales; normalization fixes the rest
        psi[basis->index(na, n - na)] = poly[na] * fac;
    }
    const double norm = psi.norm();
    if (norm < 1e-300)
        throw invalid_argument_error("symmetrized_product_state: factors symmetrize to zero");
    psi /= norm;
    return TwoModeState::pure(basis, std::move(psi));
}

namespace {

// Haar-uniform Bloch direction.
std::pair<double, double> random_bloch(Rng& rng) {
    const double z = rng.uniform(-1.0, 1.0);
    return {std::acos(z), rng.uniform(0.0, 6.283185307179586476925287)};
}

Eigen::VectorXcd random_spin_coherent_block(int n, Rng& rng) {
    auto [bt, bp] = random_bloch(rng);
    if (n == 0) return Eigen::VectorXcd::Ones(1);
    return spin_coherent_block(n, Complex(std::cos(0.5 * bt), 0.0),
                               std::polar(std::sin(0.5 * bt), bp));
}

} // namespace

TwoModeState random_separable_state(const BasisPtr& basis, std::uint64_t seed,
                                    int max_n, int n_terms) {
    if (max_n < 1 || n_terms < 1)
        throw invalid_argument_error("random_separable_state: max_n and n_terms must be >= 1");
    if (max_n > basis->cutoff())
        throw invalid_argument_error(
            "random_separable_state: max_n must not exceed the cutoff (incomplete blocks "
            "cannot hold symmetric product states)");
    Rng rng(seed);
    const auto q = rng.simplex(max_n + 1);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(basis->dim(), basis->dim());
    rho(basis->index(0, 0), basis->index(0, 0)) += q[0];
    for (int n = 1; n <= max_n; ++n) {
        const auto p = rng.simplex(n_terms);
        for (int t = 0; t < n_terms; ++t) {
            const auto v = random_spin_coherent_block(n, rng);
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j)
                    rho(basis->index(i, n - i), basis->index(j, n - j)) +=
                        q[n] * p[t] * v[i] * std::conj(v[j]);
        }
    }
    return TwoModeState::mixed(basis, std::move(rho));
}

TwoModeState random_separable_coherent_state(const BasisPtr& basis, std::uint64_t seed,
                                             int max_n, int n_terms) {
    if (max_n < 1 || n_terms < 1)
        throw invalid_argument_error(
            "random_separable_coherent_state: max_n and n_terms must be >= 1");
    if (max_n > basis->cutoff())
        throw invalid_argument_error(
            "random_separable_coherent_state: max_n must not exceed the cutoff");
    Rng rng(seed);
    const auto p = rng.simplex(n_terms);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(basis->dim(), basis->dim());
    for (int t = 0; t < n_terms; ++t) {
        const auto q = rng.simplex(max_n + 1);
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis->dim());
        psi[basis->index(0, 0)] = std::sqrt(q[0]) *
                                  std::polar(1.0, rng.uniform(0.0, 6.283185307179586));
        for (int n = 1; n <= max_n; ++n) {
            const auto v = random_spin_coherent_block(n, rng);
            const Complex phase = std::polar(std::sqrt(q[n]),
                                             rng.uniform(0.0, 6.283185307179586));
            for (int i = 0; i <= n; ++i) psi[basis->index(i, n - i)] += phase * v[i];
        }
        psi /= psi.norm();
        rho += p[t] * (psi * psi.adjoint());
    }
    return TwoModeState::mixed(basis, std::move(rho));
}

namespace {

// Indices of all occupations with n_a + n_b <= max_n.
std::vector<int> low_block_indices(const FockBasis& basis, int max_n) {
    std::vector<int> idx;
    for (int n = 0; n <= std::min(max_n, basis.max_total()); ++n)
        for (int i : basis.block(n)) idx.push_back(i);
    return idx;
}

} // namespace

TwoModeState random_pure_state(const BasisPtr& basis, std::uint64_t seed, int max_n) {
    Rng rng(seed);
    const auto idx = low_block_indices(*basis, max_n);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis->dim());
    for (int i : idx) psi[i] = Complex(rng.normal(), rng.normal());
    psi /= psi.norm();
    return TwoModeState::pure(basis, std::move(psi));
}

TwoModeState random_mixed_state(const BasisPtr& basis, std::uint64_t seed, int max_n) {
    Rng rng(seed);
    const auto idx = low_block_indices(*basis, max_n);
    const int s = static_cast<int>(idx.size());
    // Ginibre: rho = G G^dag / tr on the populated subspace
    Eigen::MatrixXcd g(s, s);
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::MatrixXcd w = g * g.adjoint();
    w /= w.trace().real();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(basis->dim(), basis->dim());
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i) rho(idx[i], idx[j]) = w(i, j);
    return TwoModeState::mixed(basis, std::move(rho));
}

} // namespace qmetro
