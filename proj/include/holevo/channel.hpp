#ifndef HOLEVO_CHANNEL_HPP
#define HOLEVO_CHANNEL_HPP

#include <cstdint>
#include <limits>

#include "holevo/enumeration.hpp"

namespace holevo {

// Dimensionless phase-diffusion strength kappa >= 0. The fully dephased limit
// kappa -> infinity is a distinguished sentinel so that off-diagonal factors
// become exact zeros instead of denormal noise.
class Diffusion {
public:
    explicit Diffusion(double kappa);

    static Diffusion infinite() noexcept {
        Diffusion d;
        d.kappa_ = std::numeric_limits<double>::infinity();
        return d;
    }

    double kappa() const noexcept { return kappa_; }
    bool is_infinite() const noexcept { return kappa_ == std::numeric_limits<double>::infinity(); }
    bool is_zero() const noexcept { return kappa_ == 0.0; }

    // Characteristic coherence time 1/kappa in units of time bins.
    double coherence_time() const noexcept;

    friend bool operator==(const Diffusion&, const Diffusion&) = default;

private:
    Diffusion() = default;
    double kappa_ = 0.0;
};

// Wrapped-Gaussian phase kernel
//   p(phi) = (1/2pi) (1 + 2 sum_{n>=1} cos(n phi) e^{-kappa n^2}),
// series truncated once e^{-kappa n^2} < tolerance. Exists for validation
// only; the channel itself always acts through dephasing_factor. kappa = 0
// is a Dirac delta and is rejected; the infinite sentinel gives the flat
// distribution 1/2pi.
double kernel_density(double phi, Diffusion kappa, double tolerance = 1e-16);

// Dephasing exponent lambda for a pair of equal-photon-number patterns,
// computed as the sum of squared suffix sums
//   lambda = sum_{l=2..L} ( sum_{j=l..L} (n_j - n'_j) )^2,
// a nonnegative integer. Coherences between different total photon numbers
// are annihilated outright, so unequal totals are an argument error.
std::int64_t dephasing_exponent(const Pattern& n, const Pattern& n_prime);

// e^{-kappa lambda} with exact limits: 1 whenever lambda = 0 or kappa = 0,
// and exactly 0 for the infinite sentinel with lambda > 0.
double dephasing_factor(std::int64_t lambda, Diffusion kappa);

}  // namespace holevo

#endif
