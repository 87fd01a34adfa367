#include "holevo/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holevo {

Diffusion::Diffusion(double kappa) : kappa_(kappa) {
    if (std::isnan(kappa) || kappa < 0.0)
        throw std::invalid_argument("Diffusion: kappa must be a nonnegative real");
}

double Diffusion::coherence_time() const noexcept {
    if (is_infinite()) return 0.0;
    if (kappa_ == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / kappa_;
}

double kernel_density(double phi, Diffusion kappa, double tolerance) {
    if (tolerance <= 0.0) throw std::invalid_argument("kernel_density: tolerance must be > 0");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (kappa.is_infinite()) return 1.0 / two_pi;
    if (kappa.is_zero())
        throw std::domain_error("kernel_density: kappa = 0 is a Dirac delta; caller must branch");

    double sum = 1.0;
    for (int n = 1;; ++n) {
        double damp = std::exp(-kappa.kappa() * static_cast<double>(n) * n);
        if (damp < tolerance) break;
        sum += 2.0 * std::cos(n * phi) * damp;
    }
    return sum / two_pi;
}

std::int64_t dephasing_exponent(const Pattern& n, const Pattern& n_prime) {
    if (n.size() != n_prime.size())
        throw std::invalid_argument("dephasing_exponent: patterns must have equal length");
    const std::size_t bins = n.size();

    std::int64_t total = 0, total_prime = 0;
    for (std::size_t i = 0; i < bins; ++i) {
        total += n[i];
        total_prime += n_prime[i];
    }
    if (total != total_prime)
        throw std::invalid_argument(
            "dephasing_exponent: patterns with different photon totals carry no coherence");

    // Running suffix sum from the right; squares accumulate for l = 2..L.
    std::int64_t lambda = 0, suffix = 0;
    for (std::size_t l = bins; l >= 2; --l) {
        suffix += n[l - 1] - n_prime[l - 1];
        lambda += suffix * suffix;
    }
    return lambda;
}

double dephasing_factor(std::int64_t lambda, Diffusion kappa) {
    if (lambda < 0) throw std::invalid_argument("dephasing_factor: lambda must be >= 0");
    if (lambda == 0) return 1.0;
    if (kappa.is_infinite()) return 0.0;
    if (kappa.is_zero()) return 1.0;
    return std::exp(-kappa.kappa() * static_cast<double>(lambda));
}

}  // namespace holevo
