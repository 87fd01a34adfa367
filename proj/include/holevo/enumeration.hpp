#ifndef HOLEVO_ENUMERATION_HPP
#define HOLEVO_ENUMERATION_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace holevo {

// Photon counts per time bin; a composition of the sector photon number N
// into L nonnegative parts.
using Pattern = std::vector<int>;

// Default cap on dense matrix dimensions. Eigendecomposition cost grows
// cubically, so anything past a few thousand rows is refused up front.
inline constexpr std::size_t kDefaultDimCap = 5000;

// Exact binomial coefficient; throws std::overflow_error if the result (or an
// intermediate product) exceeds 64 bits.
std::int64_t binomial(int n, int k);

// All compositions of `photons` into `bins` nonnegative parts, in colex order
// as produced by the standard composition-successor iterator. The ordering is
// the canonical basis ordering used everywhere downstream.
std::vector<Pattern> compositions(int photons, int bins);

// Number of strictly positive entries, k(n).
int occupied_count(const Pattern& pattern);

// Indices of the occupied bins, ascending.
std::vector<int> occupied_bins(const Pattern& pattern);

// Basis size of the N-photon sector for a fixed word:
// sum_k C(N-1,k-1)*C(L,k), equal to C(N+L-1, L-1) for N >= 1.
std::int64_t individual_dim(int photons, int bins);

// Basis size of the N-photon sector for the symbol-averaged state:
// sum_k C(N-1,k-1)*C(L,k)*M^k.
std::int64_t average_dim(int photons, int bins, int symbols);

// One basis label: an occupation pattern plus the symbol chosen in each
// occupied bin (ascending bin order, symbols in 1..M).
struct BasisEntry {
    Pattern pattern;
    std::vector<int> symbols;
};

// Ordered basis of distinguishable (pattern, symbol-assignment) labels for one
// photon-number sector. Patterns run in colex order; assignments per pattern
// in lexicographic order. Positions are stable across runs.
class SectorBasis {
public:
    SectorBasis(int photons, int bins, int symbols, std::vector<BasisEntry> entries);

    std::size_t size() const noexcept { return entries_.size(); }
    const BasisEntry& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<BasisEntry>& entries() const noexcept { return entries_; }

    std::optional<std::size_t> find(const Pattern& pattern,
                                    const std::vector<int>& symbols) const;

    int photons() const noexcept { return photons_; }
    int bins() const noexcept { return bins_; }
    int symbols() const noexcept { return symbols_; }

private:
    int photons_;
    int bins_;
    int symbols_;
    std::vector<BasisEntry> entries_;
    std::map<std::pair<Pattern, std::vector<int>>, std::size_t> index_;
};

// Enumerates every (pattern, assignment) pair of the sector, M^{k(n)}
// assignments per pattern. Throws ResourceLimitError when the dimension
// exceeds `dim_cap`.
SectorBasis build_average_basis(int photons, int bins, int symbols,
                                std::size_t dim_cap = kDefaultDimCap);

}  // namespace holevo

#endif
