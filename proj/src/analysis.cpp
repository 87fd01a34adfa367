#include "holevo/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "holevo/errors.hpp"
#include "holevo/parallel.hpp"

namespace holevo {

std::vector<double> poisson_weights(double mu, int n_max) {
    if (mu < 0.0 || !std::isfinite(mu))
        throw std::invalid_argument("poisson_weights: mean must be a nonnegative real");
    if (n_max < 0) throw std::invalid_argument("poisson_weights: n_max must be >= 0");
    std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
    p[0] = std::exp(-mu);
    for (int n = 0; n < n_max; ++n)
        p[static_cast<std::size_t>(n) + 1] = p[static_cast<std::size_t>(n)] * mu / (n + 1);
    return p;
}

int choose_truncation(int bins, double mean_photons, int sector_cap) {
    if (bins < 1) throw std::invalid_argument("choose_truncation: bins must be >= 1");
    if (mean_photons < 0.0)
        throw std::invalid_argument("choose_truncation: mean_photons must be >= 0");
    if (mean_photons == 0.0) return 0;

    const double mu = bins * mean_photons;
    const double target = 0.95 * mu;
    double weight = std::exp(-mu);  // P_N
    double retained = 0.0;          // sum of N P_N
    for (int n = 0; n <= sector_cap; ++n) {
        retained += n * weight;
        if (retained >= target) return n;
        weight *= mu / (n + 1);
    }
    throw ResourceLimitError(
        "choose_truncation: retaining 95% of the mean " + std::to_string(mu) +
        " needs more than " + std::to_string(sector_cap) +
        " photon-number sectors; reduce the mean photon number");
}

HolevoReport assemble_holevo_report(const ChannelParams& params, int n_max,
                                    std::span<const SectorResult> sectors) {
    if (n_max < 0) throw std::invalid_argument("assemble_holevo_report: n_max must be >= 0");
    if (sectors.size() < static_cast<std::size_t>(n_max) + 1)
        throw std::invalid_argument("assemble_holevo_report: sector list shorter than n_max");
    for (int n = 0; n <= n_max; ++n)
        if (sectors[static_cast<std::size_t>(n)].photons != n)
            throw std::invalid_argument("assemble_holevo_report: sectors must be indexed by N");

    HolevoReport report;
    report.params = params;
    report.n_max = n_max;
    report.sectors.assign(sectors.begin(), sectors.begin() + n_max + 1);
    const double mu = params.bins * params.mean_photons;
    report.weights = poisson_weights(mu, n_max);

    double total = 0.0, mean_retained = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        total += report.weights[static_cast<std::size_t>(n)] *
                 report.sectors[static_cast<std::size_t>(n)].chi;
        mean_retained += n * report.weights[static_cast<std::size_t>(n)];
    }
    report.total_chi = total;
    report.chi_per_use = total / params.bins;
    report.truncated_mass_fraction = mu > 0.0 ? mean_retained / mu : 1.0;
    // Every report honors the 95%-of-the-mean rule; an undertruncating N_max
    // is refused rather than silently accepted.
    if (report.truncated_mass_fraction < 0.95)
        throw ResourceLimitError(
            "holevo report: N_max = " + std::to_string(n_max) + " retains only " +
            std::to_string(report.truncated_mass_fraction * 100.0) +
            "% of the mean photon number; raise N_max or reduce the mean");
    if (!params.kappa.is_zero())
        report.linear_bound = params.mean_photons * chi1_asymptotic(params.symbols, params.kappa);
    return report;
}

HolevoReport total_holevo(const ChannelParams& params, std::optional<int> n_max_override,
                          std::size_t dim_cap, int threads) {
    if (params.bins < 1) throw std::invalid_argument("total_holevo: bins must be >= 1");
    if (params.symbols < 2) throw std::invalid_argument("total_holevo: symbols must be >= 2");
    if (params.mean_photons < 0.0)
        throw std::invalid_argument("total_holevo: mean_photons must be >= 0");

    int n_max = 0;
    if (n_max_override) {
        n_max = *n_max_override;
        if (n_max < 0) throw std::invalid_argument("total_holevo: n_max must be >= 0");
        const double mu = params.bins * params.mean_photons;
        const std::vector<double> w = poisson_weights(mu, n_max);
        double retained = 0.0;
        for (int n = 0; n <= n_max; ++n) retained += n * w[static_cast<std::size_t>(n)];
        if (retained < 0.95 * mu)
            throw ResourceLimitError(
                "total_holevo: N_max = " + std::to_string(n_max) +
                " retains less than 95% of the mean " + std::to_string(mu) +
                "; raise N_max or reduce the mean photon number");
    } else {
        n_max = choose_truncation(params.bins, params.mean_photons);
    }

    std::vector<SectorResult> sectors(static_cast<std::size_t>(n_max) + 1);
    sectors[0] = compute_sector(0, params.bins, params.symbols, params.kappa, dim_cap);
    parallel_for(static_cast<std::size_t>(n_max), threads, [&](std::size_t i) {
        sectors[i + 1] =
            compute_sector(static_cast<int>(i) + 1, params.bins, params.symbols, params.kappa,
                           dim_cap);
    });
    return assemble_holevo_report(params, n_max, sectors);
}

std::vector<SectorResult> sector_sweep(int bins, int symbols, std::span<const Diffusion> kappas,
                                       int n_max, std::size_t dim_cap, int threads) {
    if (n_max < 1) throw std::invalid_argument("sector_sweep: n_max must be >= 1");
    std::vector<SectorResult> out(kappas.size() * static_cast<std::size_t>(n_max));
    parallel_for(out.size(), threads, [&](std::size_t i) {
        const std::size_t ik = i / static_cast<std::size_t>(n_max);
        const int photons = static_cast<int>(i % static_cast<std::size_t>(n_max)) + 1;
        out[i] = compute_sector(photons, bins, symbols, kappas[ik], dim_cap);
    });
    return out;
}

ConjectureScan conjecture_check(int bins, int symbols, std::span<const Diffusion> kappas,
                                int n_max, std::size_t dim_cap, int threads, double tolerance) {
    if (n_max < 2) throw std::invalid_argument("conjecture_check: n_max must be >= 2");
    ConjectureScan scan;
    scan.bins = bins;
    scan.symbols = symbols;
    scan.n_max = n_max;
    scan.tolerance = tolerance;
    scan.sectors = sector_sweep(bins, symbols, kappas, n_max, dim_cap, threads);

    for (std::size_t ik = 0; ik < kappas.size(); ++ik) {
        const double chi_one = scan.sectors[ik * static_cast<std::size_t>(n_max)].chi;
        for (int n = 2; n <= n_max; ++n) {
            const SectorResult& sector =
                scan.sectors[ik * static_cast<std::size_t>(n_max) + static_cast<std::size_t>(n) - 1];
            ConjectureEntry entry;
            entry.kappa = kappas[ik];
            entry.photons = n;
            entry.chi_n = sector.chi;
            entry.chi_one = chi_one;
            entry.bound = n * chi_one;
            entry.margin = sector.chi - entry.bound;
            scan.entries.push_back(entry);
            if (entry.margin > tolerance) scan.violations.push_back(entry);
        }
    }
    return scan;
}

Baselines baselines(double mean_photons) {
    if (mean_photons < 0.0) throw std::invalid_argument("baselines: mean_photons must be >= 0");
    Baselines b;
    b.erasure = -std::expm1(-mean_photons);
    const double p = 0.5 * b.erasure;
    b.holevo_binary = (p > 0.0 && p < 1.0) ? -xlog2x(p) - xlog2x(1.0 - p) : 0.0;
    b.leading_order = mean_photons > 0.0 ? 0.5 * mean_photons * std::log2(1.0 / mean_photons) : 0.0;
    return b;
}

BaselineSlopes baseline_slopes(double mean_photons) {
    if (mean_photons <= 0.0)
        throw std::invalid_argument("baseline_slopes: mean_photons must be > 0");
    const double step = 1e-3 * mean_photons;
    const Baselines hi = baselines(mean_photons + step);
    const Baselines lo = baselines(mean_photons - step);
    BaselineSlopes s;
    s.erasure = (hi.erasure - lo.erasure) / (2.0 * step);
    s.holevo_binary = (hi.holevo_binary - lo.holevo_binary) / (2.0 * step);
    return s;
}

SymMatrix split_pair_state(int bins, Diffusion kappa) {
    if (bins < 2) throw std::invalid_argument("split_pair_state: bins must be >= 2");
    const std::size_t pair_dim = static_cast<std::size_t>(bins) * static_cast<std::size_t>(bins);
    const std::vector<Pattern> patterns = compositions(2, bins);
    const SymMatrix rho2 = individual_matrix(2, bins, kappa);

    // Splitter amplitudes: a doubly occupied bin maps to |l,l>, two singly
    // occupied bins to the symmetric pair (|a,b> + |b,a>)/sqrt(2).
    struct Image {
        std::size_t first, second;
        double amp_diag, amp_swap;
    };
    std::vector<Image> image(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const std::vector<int> occ = occupied_bins(patterns[i]);
        if (occ.size() == 1) {
            const std::size_t l = static_cast<std::size_t>(occ[0]);
            image[i] = {l * static_cast<std::size_t>(bins) + l, 0, 1.0, 0.0};
        } else {
            const std::size_t a = static_cast<std::size_t>(occ[0]);
            const std::size_t b = static_cast<std::size_t>(occ[1]);
            const double r = 1.0 / std::sqrt(2.0);
            image[i] = {a * static_cast<std::size_t>(bins) + b,
                        b * static_cast<std::size_t>(bins) + a, r, r};
        }
    }

    SymMatrix out(pair_dim);
    std::vector<double> dense(pair_dim * pair_dim, 0.0);
    auto add = [&](std::size_t r, std::size_t c, double v) { dense[r * pair_dim + c] += v; };
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        for (std::size_t j = 0; j < patterns.size(); ++j) {
            const double q = rho2(i, j);
            if (q == 0.0) continue;
            const Image& ri = image[i];
            const Image& rj = image[j];
            add(ri.first, rj.first, q * ri.amp_diag * rj.amp_diag);
            if (rj.amp_swap != 0.0) add(ri.first, rj.second, q * ri.amp_diag * rj.amp_swap);
            if (ri.amp_swap != 0.0) add(ri.second, rj.first, q * ri.amp_swap * rj.amp_diag);
            if (ri.amp_swap != 0.0 && rj.amp_swap != 0.0)
                add(ri.second, rj.second, q * ri.amp_swap * rj.amp_swap);
        }
    }
    for (std::size_t r = 0; r < pair_dim; ++r)
        for (std::size_t c = r; c < pair_dim; ++c) out.set(r, c, dense[r * pair_dim + c]);
    return out;
}

SymMatrix independent_pair_state(int bins, Diffusion kappa) {
    if (bins < 2) throw std::invalid_argument("independent_pair_state: bins must be >= 2");
    const std::size_t n = static_cast<std::size_t>(bins);
    const SymMatrix t = toeplitz(bins, kappa);
    SymMatrix out(n * n);
    for (std::size_t r = 0; r < n * n; ++r) {
        const std::size_t l1 = r / n, l2 = r % n;
        for (std::size_t c = r; c < n * n; ++c) {
            const std::size_t l1p = c / n, l2p = c % n;
            out.set(r, c, t(l1, l1p) * t(l2, l2p) / static_cast<double>(n * n));
        }
    }
    return out;
}

SymMatrix independent_pair_average(int bins, int symbols, Diffusion kappa, std::size_t dim_cap) {
    if (bins < 2) throw std::invalid_argument("independent_pair_average: bins must be >= 2");
    if (symbols < 2)
        throw std::invalid_argument("independent_pair_average: symbols must be >= 2");
    const std::size_t d = static_cast<std::size_t>(bins) * static_cast<std::size_t>(symbols);
    if (d * d > dim_cap)
        throw ResourceLimitError("independent pair dimension " + std::to_string(d * d) +
                                 " exceeds the configured cap of " + std::to_string(dim_cap));

    const SymMatrix t = toeplitz(bins, kappa);
    const double inv_m = 1.0 / symbols;
    const double norm = 1.0 / (static_cast<double>(bins) * bins);

    // Word-averaged symbol factor: bins among {l1,l1',l2,l2'} that coincide
    // must carry one consistent symbol; each distinct bin contributes 1/M.
    SymMatrix out(d * d);
    const std::size_t m = static_cast<std::size_t>(symbols);
    for (std::size_t r = 0; r < d * d; ++r) {
        const std::size_t row1 = r / d, row2 = r % d;
        const int l1 = static_cast<int>(row1 / m), s1 = static_cast<int>(row1 % m);
        const int l2 = static_cast<int>(row2 / m), s2 = static_cast<int>(row2 % m);
        for (std::size_t c = r; c < d * d; ++c) {
            const std::size_t col1 = c / d, col2 = c % d;
            const int l1p = static_cast<int>(col1 / m), s1p = static_cast<int>(col1 % m);
            const int l2p = static_cast<int>(col2 / m), s2p = static_cast<int>(col2 % m);

            const int bin[4] = {l1, l1p, l2, l2p};
            const int sym[4] = {s1, s1p, s2, s2p};
            bool consistent = true;
            int distinct = 0;
            for (int i = 0; i < 4 && consistent; ++i) {
                bool seen = false;
                for (int j = 0; j < i; ++j) {
                    if (bin[j] == bin[i]) {
                        seen = true;
                        if (sym[j] != sym[i]) consistent = false;
                    }
                }
                if (!seen) ++distinct;
            }
            if (!consistent) continue;
            const double value = norm * t(static_cast<std::size_t>(l1), static_cast<std::size_t>(l1p)) *
                                 t(static_cast<std::size_t>(l2), static_cast<std::size_t>(l2p)) *
                                 std::pow(inv_m, distinct);
            out.set(r, c, value);
        }
    }
    return out;
}

SplittingComparison splitting_comparison(int bins, int symbols, Diffusion kappa,
                                         std::size_t dim_cap) {
    SplittingComparison cmp;
    cmp.kappa = kappa;

    // Collective model: the splitter is an isometry, so the entropies equal
    // those of the dephased two-photon sector itself.
    const SectorResult sector = compute_sector(2, bins, symbols, kappa, dim_cap);
    cmp.collective = EnsembleEntropies{sector.individual.entropy, sector.average.entropy,
                                       sector.chi};

    // Independent model: two copies of the dephased one-photon state.
    SymMatrix t = toeplitz(bins, kappa);
    const double inv_l = 1.0 / bins;
    for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = i; j < t.dim(); ++j) t.set(i, j, t(i, j) * inv_l);
    const double s_one = entropy_bits(eigenvalues_sym(t));
    const double s_ind = 2.0 * s_one;
    const double s_avg = entropy_bits(eigenvalues_sym(independent_pair_average(
        bins, symbols, kappa, dim_cap)));
    cmp.independent = EnsembleEntropies{s_ind, s_avg, s_avg - s_ind};
    return cmp;
}

}  // namespace holevo
