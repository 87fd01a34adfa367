#include "holevo/sectors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "holevo/errors.hpp"

namespace holevo {

namespace {

std::vector<double> factorial_table(int n_max) {
    std::vector<double> f(static_cast<std::size_t>(n_max) + 1, 1.0);
    for (int i = 1; i <= n_max; ++i) f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i) - 1] * i;
    return f;
}

// sqrt(q_{n,n}) per pattern, so that q_{n,n'} = amp_n amp_n' e^{-kappa lambda}.
std::vector<double> diagonal_amplitudes(const std::vector<Pattern>& patterns, int photons,
                                        int bins) {
    const auto fact = factorial_table(photons);
    const double scale = fact[static_cast<std::size_t>(photons)] /
                         std::pow(static_cast<double>(bins), photons);
    std::vector<double> amp(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        double denom = 1.0;
        for (int c : patterns[i]) denom *= fact[static_cast<std::size_t>(c)];
        amp[i] = std::sqrt(scale / denom);
    }
    return amp;
}

SectorStats diagnose(const SymMatrix& rho) {
    const std::vector<double> spectrum = eigenvalues_sym(rho);
    SectorStats stats;
    stats.dim = rho.dim();
    stats.trace_error = std::abs(rho.trace() - 1.0);
    stats.min_eigenvalue = spectrum.back();
    stats.entropy = entropy_bits(spectrum);
    return stats;
}

}  // namespace

SymMatrix individual_matrix(int photons, int bins, Diffusion kappa, std::size_t dim_cap) {
    const std::int64_t dim = individual_dim(photons, bins);
    if (dim > static_cast<std::int64_t>(dim_cap))
        throw ResourceLimitError("individual sector dimension " + std::to_string(dim) +
                                 " exceeds the configured cap of " + std::to_string(dim_cap));

    const std::vector<Pattern> patterns = compositions(photons, bins);
    const std::vector<double> amp = diagonal_amplitudes(patterns, photons, bins);

    SymMatrix rho(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        rho.set(i, i, amp[i] * amp[i]);
        for (std::size_t j = i + 1; j < patterns.size(); ++j) {
            const std::int64_t lambda = dephasing_exponent(patterns[i], patterns[j]);
            rho.set(i, j, amp[i] * amp[j] * dephasing_factor(lambda, kappa));
        }
    }
    return rho;
}

SymMatrix average_matrix(int photons, int bins, int symbols, Diffusion kappa,
                         std::size_t dim_cap) {
    const SectorBasis basis = build_average_basis(photons, bins, symbols, dim_cap);
    const std::vector<Pattern> patterns = compositions(photons, bins);
    const std::vector<double> amp = diagonal_amplitudes(patterns, photons, bins);

    // Entries are contiguous per pattern: block p starts at offset[p] and has
    // M^{k(p)} assignment rows.
    std::vector<std::size_t> offset(patterns.size());
    std::vector<std::vector<int>> occ(patterns.size());
    std::vector<std::size_t> block(patterns.size());
    {
        std::size_t pos = 0;
        for (std::size_t p = 0; p < patterns.size(); ++p) {
            offset[p] = pos;
            occ[p] = occupied_bins(patterns[p]);
            std::size_t rows = 1;
            for (std::size_t s = 0; s < occ[p].size(); ++s) rows *= static_cast<std::size_t>(symbols);
            block[p] = rows;
            pos += rows;
        }
    }

    SymMatrix rho(basis.size());
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        for (std::size_t q = p; q < patterns.size(); ++q) {
            const std::int64_t lambda = dephasing_exponent(patterns[p], patterns[q]);
            const double factor = dephasing_factor(lambda, kappa);
            if (factor == 0.0 && p != q) continue;

            // Bins occupied in both patterns pin the assignments together;
            // k(n + n') counts bins occupied in either.
            int k_union = 0;
            std::vector<std::pair<std::size_t, std::size_t>> common;
            {
                std::size_t ip = 0, iq = 0;
                for (int b = 0; b < bins; ++b) {
                    const bool inp = ip < occ[p].size() && occ[p][ip] == b;
                    const bool inq = iq < occ[q].size() && occ[q][iq] == b;
                    if (inp || inq) ++k_union;
                    if (inp && inq) common.emplace_back(ip, iq);
                    if (inp) ++ip;
                    if (inq) ++iq;
                }
            }
            const double value =
                amp[p] * amp[q] * factor * std::pow(static_cast<double>(symbols), -k_union);

            for (std::size_t a = 0; a < block[p]; ++a) {
                const BasisEntry& row = basis[offset[p] + a];
                const std::size_t b_start = (p == q) ? a : 0;
                for (std::size_t b = b_start; b < block[q]; ++b) {
                    const BasisEntry& col = basis[offset[q] + b];
                    bool agree = true;
                    for (const auto& [cp, cq] : common) {
                        if (row.symbols[cp] != col.symbols[cq]) {
                            agree = false;
                            break;
                        }
                    }
                    if (agree) rho.set(offset[p] + a, offset[q] + b, value);
                }
            }
        }
    }
    return rho;
}

SectorResult compute_sector(int photons, int bins, int symbols, Diffusion kappa,
                            std::size_t dim_cap) {
    if (photons < 0) throw std::invalid_argument("compute_sector: photons must be >= 0");
    SectorResult result;
    result.photons = photons;
    result.bins = bins;
    result.symbols = symbols;
    result.kappa = kappa;

    if (photons == 0) {
        // Vacuum sector: both states are the same pure state.
        result.individual = SectorStats{1, 0.0, 1.0, 0.0};
        result.average = SectorStats{1, 0.0, 1.0, 0.0};
        result.chi = 0.0;
        return result;
    }

    result.individual = diagnose(individual_matrix(photons, bins, kappa, dim_cap));
    result.average = diagnose(average_matrix(photons, bins, symbols, kappa, dim_cap));
    result.chi = result.average.entropy - result.individual.entropy;
    return result;
}

double chi1_exact(int bins, int symbols, Diffusion kappa) {
    if (bins < 1) throw std::invalid_argument("chi1_exact: bins must be >= 1");
    if (symbols < 2) throw std::invalid_argument("chi1_exact: symbols must be >= 2");

    const double log2_m = std::log2(static_cast<double>(symbols));
    if (kappa.is_zero()) {
        // All-ones Toeplitz is exactly rank one with eigenvalue L.
        return log2_m + (symbols - 1.0) / symbols * std::log2(static_cast<double>(bins));
    }
    const std::vector<double> spectrum = eigenvalues_sym(toeplitz(bins, kappa));
    double sum_h = 0.0;
    for (double t : spectrum) {
        if (t < -kEigenClampTol)
            throw PsdViolationError("chi1_exact: Toeplitz eigenvalue " + std::to_string(t) +
                                        " below the clamp window",
                                    t);
        sum_h += xlog2x(t);
    }
    return log2_m + (symbols - 1.0) / (static_cast<double>(bins) * symbols) * sum_h;
}

double chi1_asymptotic(int symbols, Diffusion kappa) {
    if (symbols < 2) throw std::invalid_argument("chi1_asymptotic: symbols must be >= 2");
    const double log2_m = std::log2(static_cast<double>(symbols));
    if (kappa.is_infinite()) return log2_m;
    if (kappa.is_zero())
        throw std::domain_error("chi1_asymptotic: diverges at kappa = 0");
    return log2_m -
           (symbols - 1.0) / symbols * std::log2(1.0 - std::exp(-2.0 * kappa.kappa()));
}

}  // namespace holevo
