#ifndef HOLEVO_SECTORS_HPP
#define HOLEVO_SECTORS_HPP

#include <cstddef>

#include "holevo/channel.hpp"
#include "holevo/enumeration.hpp"
#include "holevo/spectral.hpp"

namespace holevo {

// Dephased density matrix of one N-photon input state (any fixed word; the
// entries do not depend on it), written over compositions(N, L):
//   q_{n,n'} = (N!/L^N) e^{-kappa lambda_{n,n'}} / sqrt(prod n_l! prod n'_l!).
SymMatrix individual_matrix(int photons, int bins, Diffusion kappa,
                            std::size_t dim_cap = kDefaultDimCap);

// Dephased density matrix of the uniform word average, written over
// build_average_basis(N, L, M):
//   qbar = q_{n,n'} M^{-k(n+n')}  when the assignments agree on every bin
//                                 occupied in both patterns, else 0.
SymMatrix average_matrix(int photons, int bins, int symbols, Diffusion kappa,
                         std::size_t dim_cap = kDefaultDimCap);

// Diagnostics of one diagonalized density matrix.
struct SectorStats {
    std::size_t dim = 0;
    double trace_error = 0.0;     // |trace - 1|
    double min_eigenvalue = 0.0;
    double entropy = 0.0;         // bits
};

// Per-sector Holevo contribution chi^(N) = S(average) - S(individual),
// together with the diagnostics of both states.
struct SectorResult {
    int photons = 0;
    int bins = 0;
    int symbols = 0;
    Diffusion kappa = Diffusion(0.0);
    SectorStats individual;
    SectorStats average;
    double chi = 0.0;
};

// Builds and diagonalizes both sector states. N = 0 short-circuits to the
// vacuum (chi identically zero). Pure per-sector entry point; safe to map
// over N in parallel.
SectorResult compute_sector(int photons, int bins, int symbols, Diffusion kappa,
                            std::size_t dim_cap = kDefaultDimCap);

// One-photon contribution through the Toeplitz spectrum:
//   chi1 = log2 M + (M-1)/(L M) sum_i h(t_i),  h(x) = x log2 x,
// with the exact rank-one shortcut log2 M + ((M-1)/M) log2 L at kappa = 0.
// Independent of the full sector machinery; the two paths cross-validate.
double chi1_exact(int bins, int symbols, Diffusion kappa);

// Closed-form infinite-L limit log2 M - ((M-1)/M) log2(1 - e^{-2 kappa});
// log2 M at the infinite sentinel. Diverges at kappa = 0 (domain error).
double chi1_asymptotic(int symbols, Diffusion kappa);

}  // namespace holevo

#endif
