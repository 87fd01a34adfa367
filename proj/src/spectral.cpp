#include "holevo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "holevo/errors.hpp"

namespace holevo {

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += a_[i * dim_ + i];
    return t;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double SymMatrix::min_diagonal() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dim_; ++i) m = std::min(m, a_[i * dim_ + i]);
    return m;
}

namespace {

// Sum of squares of the strict upper triangle, doubled.
double offdiag_sq(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
    return 2.0 * s;
}

}  // namespace

std::vector<double> eigenvalues_sym(const SymMatrix& matrix) {
    const std::size_t n = matrix.dim();
    if (n == 0) throw std::invalid_argument("eigenvalues_sym: empty matrix");
    for (double v : matrix.data())
        if (!std::isfinite(v)) throw std::invalid_argument("eigenvalues_sym: non-finite entry");

    std::vector<double> a(matrix.data().begin(), matrix.data().end());

    double norm_sq = 0.0;
    for (double v : a) norm_sq += v * v;
    const double thresh_sq = kJacobiRelTol * kJacobiRelTol * norm_sq;

    bool converged = false;
    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        if (offdiag_sq(a, n) <= thresh_sq) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = 0.5 * (aqq - app) / apq;
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                for (std::size_t j = 0; j < p; ++j) {
                    const double g = a[j * n + p], h = a[j * n + q];
                    a[j * n + p] = g - s * (h + g * tau);
                    a[j * n + q] = h + s * (g - h * tau);
                }
                for (std::size_t j = p + 1; j < q; ++j) {
                    const double g = a[p * n + j], h = a[j * n + q];
                    a[p * n + j] = g - s * (h + g * tau);
                    a[j * n + q] = h + s * (g - h * tau);
                }
                for (std::size_t j = q + 1; j < n; ++j) {
                    const double g = a[p * n + j], h = a[q * n + j];
                    a[p * n + j] = g - s * (h + g * tau);
                    a[q * n + j] = h + s * (g - h * tau);
                }
            }
        }
    }
    if (!converged && offdiag_sq(a, n) > thresh_sq) {
        const double residual = std::sqrt(offdiag_sq(a, n));
        throw NumericalError("eigenvalues_sym: no convergence after " +
                                 std::to_string(kJacobiMaxSweeps) +
                                 " sweeps; off-diagonal residual " + std::to_string(residual),
                             residual);
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

double xlog2x(double x) noexcept { return x > 0.0 ? x * std::log2(x) : 0.0; }

double entropy_bits(std::span<const double> probs) {
    double sum = 0.0;
    for (double p : probs) sum += p;
    if (std::abs(sum - 1.0) > kEntropySumTol)
        throw DistributionError("entropy_bits: probabilities sum to " + std::to_string(sum) +
                                    ", outside the unit-sum tolerance",
                                std::abs(sum - 1.0));

    double h = 0.0;
    for (double p : probs) {
        if (p < -kEigenClampTol)
            throw PsdViolationError("entropy_bits: entry " + std::to_string(p) +
                                        " below the -1e-10 clamp window",
                                    p);
        if (p > 0.0) h -= xlog2x(p);
    }
    // Entries above 1 by roundoff contribute negatively; the entropy itself
    // is nonnegative.
    return h < 0.0 ? 0.0 : h;
}

SymMatrix toeplitz(int bins, Diffusion kappa) {
    if (bins < 1) throw std::invalid_argument("toeplitz: bins must be >= 1");
    const std::size_t n = static_cast<std::size_t>(bins);
    SymMatrix t(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < n; ++j)
            t.set(i, j, dephasing_factor(static_cast<std::int64_t>(j - i), kappa));
    }
    return t;
}

double szego_symbol(double theta, Diffusion kappa) {
    if (kappa.is_infinite()) return 1.0;
    if (kappa.is_zero())
        throw std::domain_error("szego_symbol: the symbol is singular at kappa = 0");
    const double e1 = std::exp(-kappa.kappa());
    const double e2 = e1 * e1;
    return (1.0 - e2) / (1.0 + e2 - 2.0 * e1 * std::cos(theta));
}

GaussLegendreRule gauss_legendre(int points) {
    if (points < 1) throw std::invalid_argument("gauss_legendre: points must be >= 1");
    const int n = points;
    GaussLegendreRule rule;
    rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);

    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev estimate of the i-th root, then Newton on P_n.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = -p1 / pp;
            z += dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = -z;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

SzegoIntegral szego_entropy_integral(Diffusion kappa, double tolerance) {
    if (tolerance <= 0.0)
        throw std::invalid_argument("szego_entropy_integral: tolerance must be > 0");
    if (kappa.is_infinite()) return SzegoIntegral{0.0, 0.0};
    if (kappa.is_zero())
        throw std::domain_error("szego_entropy_integral: diverges at kappa = 0");

    const double closed = -std::log2(1.0 - std::exp(-2.0 * kappa.kappa()));

    static const GaussLegendreRule rule = gauss_legendre(16);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    constexpr int max_doublings = 24;

    double prev = std::numeric_limits<double>::quiet_NaN();
    int panels = 1;
    for (int round = 0; round < max_doublings; ++round, panels *= 2) {
        double total = 0.0;
        const double width = two_pi / panels;
        for (int p = 0; p < panels; ++p) {
            const double a = -std::numbers::pi + p * width;
            const double mid = a + 0.5 * width;
            double acc = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const double theta = mid + 0.5 * width * rule.nodes[k];
                const double f = szego_symbol(theta, kappa);
                acc += rule.weights[k] * f * std::log2(f);
            }
            total += 0.5 * width * acc;
        }
        const double value = total / two_pi;
        if (!std::isnan(prev) && std::abs(value - prev) < tolerance)
            return SzegoIntegral{value, closed};
        prev = value;
    }
    throw NumericalError("szego_entropy_integral: quadrature did not converge to " +
                             std::to_string(tolerance),
                         tolerance);
}

}  // namespace holevo
