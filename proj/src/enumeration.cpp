#include "holevo/enumeration.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "holevo/errors.hpp"

namespace holevo {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("64-bit overflow in combinatorial product");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("64-bit overflow in combinatorial sum");
    return r;
}

std::int64_t checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

}  // namespace

std::int64_t binomial(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
    if (k > n) return 0;
    k = std::min(k, n - k);
    // After step i the value is exactly C(n-k+i, i), which grows with i, so a
    // 64-bit check per step catches overflow without false alarms; the
    // intermediate product needs 128 bits.
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        const __int128 wide = static_cast<__int128>(r) * (n - k + i) / i;
        if (wide > std::numeric_limits<std::int64_t>::max())
            throw std::overflow_error("binomial: result exceeds 64 bits");
        r = static_cast<std::int64_t>(wide);
    }
    return r;
}

std::vector<Pattern> compositions(int photons, int bins) {
    if (bins < 1) throw std::invalid_argument("compositions: bins must be >= 1");
    if (photons < 0) throw std::invalid_argument("compositions: photons must be >= 0");

    std::vector<Pattern> out;
    Pattern c(static_cast<std::size_t>(bins), 0);
    c[0] = photons;
    for (;;) {
        out.push_back(c);
        if (c[static_cast<std::size_t>(bins) - 1] == photons) break;
        // Successor: move the first nonzero entry to a unit bump of its right
        // neighbour, resetting the remainder to bin 0. Emits colex order.
        std::size_t h = 0;
        while (c[h] == 0) ++h;
        int t = c[h];
        c[h] = 0;
        c[0] = t - 1;
        ++c[h + 1];
    }
    return out;
}

int occupied_count(const Pattern& pattern) {
    int k = 0;
    for (int v : pattern)
        if (v > 0) ++k;
    return k;
}

std::vector<int> occupied_bins(const Pattern& pattern) {
    std::vector<int> occ;
    for (std::size_t i = 0; i < pattern.size(); ++i)
        if (pattern[i] > 0) occ.push_back(static_cast<int>(i));
    return occ;
}

std::int64_t individual_dim(int photons, int bins) {
    if (photons < 1) throw std::invalid_argument("individual_dim: photons must be >= 1");
    if (bins < 1) throw std::invalid_argument("individual_dim: bins must be >= 1");
    std::int64_t total = 0;
    for (int k = 1; k <= std::min(bins, photons); ++k)
        total = checked_add(total, checked_mul(binomial(photons - 1, k - 1), binomial(bins, k)));
    return total;
}

std::int64_t average_dim(int photons, int bins, int symbols) {
    if (photons < 1) throw std::invalid_argument("average_dim: photons must be >= 1");
    if (bins < 1) throw std::invalid_argument("average_dim: bins must be >= 1");
    if (symbols < 2) throw std::invalid_argument("average_dim: symbols must be >= 2");
    std::int64_t total = 0;
    for (int k = 1; k <= std::min(bins, photons); ++k) {
        std::int64_t term = checked_mul(binomial(photons - 1, k - 1), binomial(bins, k));
        total = checked_add(total, checked_mul(term, checked_pow(symbols, k)));
    }
    return total;
}

SectorBasis::SectorBasis(int photons, int bins, int symbols, std::vector<BasisEntry> entries)
    : photons_(photons), bins_(bins), symbols_(symbols), entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        index_.emplace(std::make_pair(entries_[i].pattern, entries_[i].symbols), i);
}

std::optional<std::size_t> SectorBasis::find(const Pattern& pattern,
                                             const std::vector<int>& symbols) const {
    auto it = index_.find(std::make_pair(pattern, symbols));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SectorBasis build_average_basis(int photons, int bins, int symbols, std::size_t dim_cap) {
    std::int64_t dim = average_dim(photons, bins, symbols);
    if (dim > static_cast<std::int64_t>(dim_cap))
        throw ResourceLimitError("sector basis dimension " + std::to_string(dim) +
                                 " exceeds the configured cap of " + std::to_string(dim_cap));

    std::vector<BasisEntry> entries;
    entries.reserve(static_cast<std::size_t>(dim));
    for (const Pattern& p : compositions(photons, bins)) {
        int k = occupied_count(p);
        // Lexicographic odometer over the k occupied bins, symbols 1..M.
        std::vector<int> mu(static_cast<std::size_t>(k), 1);
        for (;;) {
            entries.push_back(BasisEntry{p, mu});
            int pos = k - 1;
            while (pos >= 0 && mu[static_cast<std::size_t>(pos)] == symbols) {
                mu[static_cast<std::size_t>(pos)] = 1;
                --pos;
            }
            if (pos < 0) break;
            ++mu[static_cast<std::size_t>(pos)];
        }
    }
    return SectorBasis(photons, bins, symbols, std::move(entries));
}

}  // namespace holevo
