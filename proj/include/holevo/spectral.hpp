#ifndef HOLEVO_SPECTRAL_HPP
#define HOLEVO_SPECTRAL_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "holevo/channel.hpp"

namespace holevo {

// Dense real symmetric matrix. set() writes both triangles, so the symmetry
// invariant holds exactly by construction.
class SymMatrix {
public:
    explicit SymMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {}

    std::size_t dim() const noexcept { return dim_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    void set(std::size_t i, std::size_t j, double value) {
        a_[i * dim_ + j] = value;
        a_[j * dim_ + i] = value;
    }

    double trace() const;
    double frobenius_norm() const;
    double min_diagonal() const;

    std::span<const double> data() const noexcept { return a_; }

private:
    std::size_t dim_;
    std::vector<double> a_;
};

// Convergence parameters of the cyclic Jacobi eigensolver.
inline constexpr double kJacobiRelTol = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

// Clamp window for roundoff-negative eigenvalues of PSD matrices; anything
// below -kEigenClampTol is a construction bug, not noise.
inline constexpr double kEigenClampTol = 1e-10;

// Unit-sum tolerance for probability vectors fed to entropy_bits.
inline constexpr double kEntropySumTol = 1e-8;

// Eigenvalues of a dense real symmetric matrix, descending, via cyclic Jacobi
// rotations. Converged when the off-diagonal Frobenius norm falls below
// kJacobiRelTol * ||A||_F; throws NumericalError (carrying the residual) if
// that is not reached within kJacobiMaxSweeps sweeps.
std::vector<double> eigenvalues_sym(const SymMatrix& matrix);

// x log2 x with the continuous extension h(0) = 0.
double xlog2x(double x) noexcept;

// Shannon entropy -sum p log2 p in bits. Entries must sum to 1 within
// kEntropySumTol (DistributionError otherwise); entries in [-kEigenClampTol, 0)
// are clamped to zero, anything lower raises PsdViolationError.
double entropy_bits(std::span<const double> probs);

// The L x L matrix with entries e^{-kappa |l - l'|}: identity at the infinite
// sentinel, all-ones at kappa = 0.
SymMatrix toeplitz(int bins, Diffusion kappa);

// Spectral density of the infinite-L limit,
//   f(theta) = (1 - e^{-2k}) / (1 + e^{-2k} - 2 e^{-k} cos theta).
// Strictly positive for kappa > 0, identically 1 at the infinite sentinel;
// kappa = 0 makes the symbol singular and is rejected.
double szego_symbol(double theta, Diffusion kappa);

struct SzegoIntegral {
    double quadrature;   // (1/2pi) integral of f log2 f over (-pi, pi]
    double closed_form;  // -log2(1 - e^{-2 kappa})
};

// Evaluates the entropy integral by adaptive Gauss-Legendre quadrature
// (16-point panels, panel count doubled until successive estimates agree to
// `tolerance`) and returns it next to the closed form.
SzegoIntegral szego_entropy_integral(Diffusion kappa, double tolerance = 1e-10);

struct GaussLegendreRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

// Nodes and weights of the n-point Gauss-Legendre rule, by Newton iteration
// on the Legendre recurrence.
GaussLegendreRule gauss_legendre(int points);

}  // namespace holevo

#endif
