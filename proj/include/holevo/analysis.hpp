#ifndef HOLEVO_ANALYSIS_HPP
#define HOLEVO_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "holevo/channel.hpp"
#include "holevo/sectors.hpp"
#include "holevo/spectral.hpp"

namespace holevo {

// Largest photon-number sector considered by choose_truncation before giving
// up with a resource-limit error.
inline constexpr int kDefaultSectorCap = 64;

// Margin tolerance separating genuine conjecture violations from eigensolver
// roundoff (entropies carry ~1e-11 noise at the dimensions involved).
inline constexpr double kConjectureTol = 1e-9;

struct ChannelParams {
    int bins = 1;                    // L
    int symbols = 2;                 // M
    Diffusion kappa = Diffusion(0.0);
    double mean_photons = 0.0;       // n-bar per time bin
};

// Poisson probabilities P_0..P_{n_max} for mean `mu`, by the stable upward
// recurrence P_{N+1} = P_N mu / (N+1).
std::vector<double> poisson_weights(double mu, int n_max);

// Smallest N_max whose truncated Poisson mean retains at least 95% of
// L * mean_photons. Returns 0 when mean_photons = 0.
int choose_truncation(int bins, double mean_photons, int sector_cap = kDefaultSectorCap);

struct HolevoReport {
    ChannelParams params;
    int n_max = 0;
    std::vector<double> weights;        // P_N(L n-bar), N = 0..n_max
    std::vector<SectorResult> sectors;  // index N = 0..n_max
    double total_chi = 0.0;             // sum of weights * chi, bits per block
    double chi_per_use = 0.0;           // total_chi / L
    std::optional<double> linear_bound; // n-bar * chi1_asymptotic; absent at kappa = 0
    double truncated_mass_fraction = 1.0;  // retained share of the mean L n-bar
};

// Poisson-weighted total over photon-number sectors. The truncation order is
// choose_truncation unless overridden; overrides that fail the 95% mean rule
// are refused rather than silently undertruncated.
HolevoReport total_holevo(const ChannelParams& params,
                          std::optional<int> n_max_override = std::nullopt,
                          std::size_t dim_cap = kDefaultDimCap, int threads = 1);

// Assembles a report from precomputed sector values (index N = 0..>= n_max).
// Lets sweeps over mean_photons reuse one sector computation per kappa, since
// chi^(N) does not depend on the pulse amplitude.
HolevoReport assemble_holevo_report(const ChannelParams& params, int n_max,
                                    std::span<const SectorResult> sectors);

// Sector contributions for N = 1..n_max at every kappa in the grid, kappa-major
// (entry index = kappa_index * n_max + (N - 1)). Points are independent and
// computed in parallel when threads != 1.
std::vector<SectorResult> sector_sweep(int bins, int symbols, std::span<const Diffusion> kappas,
                                       int n_max, std::size_t dim_cap = kDefaultDimCap,
                                       int threads = 1);

struct ConjectureEntry {
    Diffusion kappa = Diffusion(0.0);
    int photons = 0;      // N >= 2
    double chi_n = 0.0;
    double chi_one = 0.0;
    double bound = 0.0;   // N * chi_one
    double margin = 0.0;  // chi_n - bound; a violation when margin > tolerance
};

struct ConjectureScan {
    int bins = 0;
    int symbols = 0;
    int n_max = 0;
    double tolerance = kConjectureTol;
    std::vector<ConjectureEntry> entries;     // every checked (kappa, N)
    std::vector<ConjectureEntry> violations;  // entries with margin > tolerance
    std::vector<SectorResult> sectors;        // underlying sweep, N = 1..n_max
};

// Checks chi^(N) <= N chi^(1) for 2 <= N <= n_max over the kappa grid. Both
// sides come from the same sector machinery so roundoff cancels; the expected
// outcome is an empty violation list.
ConjectureScan conjecture_check(int bins, int symbols, std::span<const Diffusion> kappas,
                                int n_max, std::size_t dim_cap = kDefaultDimCap,
                                int threads = 1, double tolerance = kConjectureTol);

struct Baselines {
    double erasure = 0.0;        // 1 - e^{-n}
    double holevo_binary = 0.0;  // H((1 - e^{-n})/2)
    double leading_order = 0.0;  // (n/2) log2(1/n)
};

// Two-symbol single-bin reference curves: direct-detection erasure channel
// versus the binary Holevo limit, plus its weak-signal leading order.
Baselines baselines(double mean_photons);

struct BaselineSlopes {
    double erasure = 0.0;
    double holevo_binary = 0.0;
};

// d/dn of the two baselines by central differences with step 1e-3 * n.
BaselineSlopes baseline_slopes(double mean_photons);

struct EnsembleEntropies {
    double entropy_individual = 0.0;
    double entropy_average = 0.0;
    double chi = 0.0;
};

struct SplittingComparison {
    Diffusion kappa = Diffusion(0.0);
    EnsembleEntropies independent;  // two independently dephased photons
    EnsembleEntropies collective;   // true two-photon dephasing, then split
};

// Two-photon state of a fixed word after collective dephasing, routed through
// the deterministic splitter onto the pair basis |l1> x |l2| (row-major,
// dimension L^2). For L = 2 this is the 4x4 matrix with e^{-4 kappa} corners.
SymMatrix split_pair_state(int bins, Diffusion kappa);

// Tensor product of two independently dephased one-photon states of a fixed
// word, same basis. For L = 2 the corners are e^{-2 kappa}.
SymMatrix independent_pair_state(int bins, Diffusion kappa);

// Uniform word average of the independent pair model over the full
// (bin, symbol) single-photon space; dimension (L M)^2. Built from the
// closed-form symbol average: each distinct bin among the four involved
// contributes a factor 1/M, and conflicting symbol constraints give zero.
SymMatrix independent_pair_average(int bins, int symbols, Diffusion kappa,
                                   std::size_t dim_cap = kDefaultDimCap);

// Entropies and chi of the two-photon ensemble under both noise models. The
// collective numbers equal compute_sector(2, ...) since the splitter is an
// isometry; the independent numbers come from the pair states above.
SplittingComparison splitting_comparison(int bins, int symbols, Diffusion kappa,
                                         std::size_t dim_cap = kDefaultDimCap);

}  // namespace holevo

#endif
