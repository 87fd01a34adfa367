#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "holevo/errors.hpp"
#include "holevo/spectral.hpp"

using namespace holevo;

TEST_CASE("eigenvalues_sym: 2x2 analytic case") {
    SymMatrix a(2);
    a.set(0, 0, 1.0);
    a.set(1, 1, 1.0);
    a.set(0, 1, std::exp(-1.0));
    const auto eig = eigenvalues_sym(a);
    REQUIRE(eig.size() == 2);
    CHECK(eig[0] == doctest::Approx(1.0 + std::exp(-1.0)).epsilon(1e-14));
    CHECK(eig[1] == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("eigenvalues_sym: identity and rank-one cases") {
    SymMatrix id(4);
    for (std::size_t i = 0; i < 4; ++i) id.set(i, i, 1.0);
    CHECK(eigenvalues_sym(id) == std::vector<double>{1.0, 1.0, 1.0, 1.0});

    const auto eig = eigenvalues_sym(toeplitz(3, Diffusion(0.0)));
    REQUIRE(eig.size() == 3);
    CHECK(eig[0] == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(std::abs(eig[1]) < 1e-12);
    CHECK(std::abs(eig[2]) < 1e-12);
}

TEST_CASE("eigenvalues_sym: sum equals trace on random matrices up to dim 200") {
    std::mt19937_64 rng(20240817);
    std::normal_distribution<double> gauss;
    for (std::size_t dim : {2u, 17u, 64u, 200u}) {
        SymMatrix a(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i; j < dim; ++j) a.set(i, j, gauss(rng));
        const auto eig = eigenvalues_sym(a);
        double sum = 0.0;
        for (double v : eig) sum += v;
        CHECK(std::abs(sum - a.trace()) <= 1e-10 * static_cast<double>(dim));
        CHECK(std::is_sorted(eig.rbegin(), eig.rend()));
    }
}

TEST_CASE("eigenvalues_sym: rejects non-finite entries") {
    SymMatrix a(2);
    a.set(0, 1, std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(eigenvalues_sym(a), std::invalid_argument);
}

TEST_CASE("entropy_bits basics") {
    CHECK(entropy_bits(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(entropy_bits(std::vector<double>{1.0, 0.0, 0.0}) == 0.0);
    CHECK(entropy_bits(std::vector<double>{0.75, 0.25}) ==
          doctest::Approx(0.811278).epsilon(1e-6));
}

TEST_CASE("entropy_bits: permutation invariance and uniform maximum") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> p(8);
        double sum = 0.0;
        for (double& v : p) {
            v = uni(rng);
            sum += v;
        }
        for (double& v : p) v /= sum;
        const double h = entropy_bits(p);
        std::vector<double> shuffled = p;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(entropy_bits(shuffled) == doctest::Approx(h).epsilon(1e-13));
        CHECK(h <= std::log2(8.0) + 1e-12);
    }
    CHECK(entropy_bits(std::vector<double>(8, 0.125)) ==
          doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("entropy_bits: error paths") {
    CHECK_THROWS_AS(entropy_bits(std::vector<double>{0.7, 0.7}), DistributionError);
    CHECK_THROWS_AS(entropy_bits(std::vector<double>{0.5, 0.4}), DistributionError);
    CHECK_THROWS_AS(entropy_bits(std::vector<double>{1.0 + 1e-9, -1e-9}), PsdViolationError);
    // Roundoff-scale negatives are clamped silently.
    CHECK(entropy_bits(std::vector<double>{1.0 + 1e-11, -1e-11}) == 0.0);
}

TEST_CASE("toeplitz: definition and sentinels") {
    const SymMatrix t = toeplitz(2, Diffusion(1.0));
    CHECK(t(0, 0) == 1.0);
    CHECK(t(1, 1) == 1.0);
    CHECK(t(0, 1) == std::exp(-1.0));

    const SymMatrix id = toeplitz(3, Diffusion::infinite());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(id(i, j) == (i == j ? 1.0 : 0.0));

    const SymMatrix ones = toeplitz(3, Diffusion(0.0));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(ones(i, j) == 1.0);
}

TEST_CASE("toeplitz: spectrum is strictly positive for kappa > 0") {
    for (double kappa : {0.05, 0.5, 5.0}) {
        for (int bins : {2, 10, 100}) {
            const auto eig = eigenvalues_sym(toeplitz(bins, Diffusion(kappa)));
            CHECK(eig.back() > 0.0);
        }
    }
}

TEST_CASE("szego_symbol: values and errors") {
    const double e1 = std::exp(-1.0), e2 = std::exp(-2.0);
    CHECK(szego_symbol(std::numbers::pi, Diffusion(1.0)) ==
          doctest::Approx((1.0 - e2) / ((1.0 + e1) * (1.0 + e1))).epsilon(1e-14));
    CHECK(szego_symbol(0.0, Diffusion(1.0)) ==
          doctest::Approx((1.0 - e2) / ((1.0 - e1) * (1.0 - e1))).epsilon(1e-14));
    CHECK(szego_symbol(0.0, Diffusion(1.0)) == doctest::Approx(2.163953).epsilon(1e-6));
    CHECK(szego_symbol(0.4, Diffusion::infinite()) == 1.0);
    CHECK(szego_symbol(1.2, Diffusion::infinite()) == 1.0);
    CHECK_THROWS_AS(szego_symbol(0.3, Diffusion(0.0)), std::domain_error);

    // f(0) is the maximum.
    for (double theta : {0.1, 0.5, 1.0, 3.0}) {
        CHECK(szego_symbol(theta, Diffusion(0.7)) < szego_symbol(0.0, Diffusion(0.7)));
        CHECK(szego_symbol(theta, Diffusion(0.7)) > 0.0);
    }
}

TEST_CASE("gauss_legendre: nodes symmetric, weights sum to 2, exact on cubics") {
    const GaussLegendreRule rule = gauss_legendre(16);
    double wsum = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
        wsum += rule.weights[i];
        CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[15 - i]).epsilon(1e-14));
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));

    const GaussLegendreRule two = gauss_legendre(2);
    double cubic = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        const double x = two.nodes[i];
        cubic += two.weights[i] * (x * x * x + 2.0 * x * x - x + 1.0);
    }
    CHECK(cubic == doctest::Approx(2.0 * 2.0 / 3.0 + 2.0).epsilon(1e-13));
}

TEST_CASE("szego_entropy_integral: quadrature matches the closed form") {
    for (double kappa : {0.1, 0.5, 1.0, 3.0}) {
        const SzegoIntegral v = szego_entropy_integral(Diffusion(kappa));
        CHECK(v.closed_form == -std::log2(1.0 - std::exp(-2.0 * kappa)));
        CHECK(std::abs(v.quadrature - v.closed_form) <= 1e-8);
    }
    const SzegoIntegral k1 = szego_entropy_integral(Diffusion(1.0));
    CHECK(k1.closed_form == doctest::Approx(0.2097872745).epsilon(1e-9));
    const SzegoIntegral k01 = szego_entropy_integral(Diffusion(0.1));
    CHECK(k01.closed_form == doctest::Approx(2.4637939082).epsilon(1e-9));
}

TEST_CASE("szego_entropy_integral: limits and errors") {
    const SzegoIntegral inf = szego_entropy_integral(Diffusion::infinite());
    CHECK(inf.quadrature == 0.0);
    CHECK(inf.closed_form == 0.0);
    CHECK_THROWS_AS(szego_entropy_integral(Diffusion(0.0)), std::domain_error);
    CHECK_THROWS_AS(szego_entropy_integral(Diffusion(1.0), -1.0), std::invalid_argument);
}

TEST_CASE("szego convergence of Toeplitz spectral sums (frozen regression bound)") {
    // (1/L) sum h(t_i) approaches the integral like c/L; at L = 100, kappa = 1
    // the measured gap is 2.2056896803e-3 (and half that after the (M-1)/M
    // factor in chi1). Frozen two-sided so regressions in either direction
    // surface.
    const auto eig = eigenvalues_sym(toeplitz(100, Diffusion(1.0)));
    double avg_h = 0.0;
    for (double t : eig) avg_h += xlog2x(t);
    avg_h /= 100.0;
    const double gap = std::abs(avg_h - szego_entropy_integral(Diffusion(1.0)).closed_form);
    CHECK(gap >= 2.2056e-3);
    CHECK(gap <= 2.2058e-3);
}
