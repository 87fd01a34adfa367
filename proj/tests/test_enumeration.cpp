#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "holevo/enumeration.hpp"
#include "holevo/errors.hpp"

using namespace holevo;

namespace {

// Independent oracle: recursively enumerate every way to place `photons` into
// `bins` ordered slots.
void enumerate_rec(int photons, int bins, Pattern& prefix, std::vector<Pattern>& out) {
    if (bins == 1) {
        prefix.push_back(photons);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int first = 0; first <= photons; ++first) {
        prefix.push_back(first);
        enumerate_rec(photons - first, bins - 1, prefix, out);
        prefix.pop_back();
    }
}

std::vector<Pattern> brute_force_compositions(int photons, int bins) {
    std::vector<Pattern> out;
    Pattern prefix;
    enumerate_rec(photons, bins, prefix, out);
    return out;
}

}  // namespace

TEST_CASE("compositions: tiny exhaustive cases") {
    CHECK(compositions(2, 2) == std::vector<Pattern>{{2, 0}, {1, 1}, {0, 2}});
    CHECK(compositions(0, 3) == std::vector<Pattern>{{0, 0, 0}});
    CHECK(compositions(1, 1) == std::vector<Pattern>{{1}});
}

TEST_CASE("compositions: count and content match brute force for N,L <= 8") {
    for (int photons = 0; photons <= 8; ++photons) {
        for (int bins = 1; bins <= 8; ++bins) {
            const auto got = compositions(photons, bins);
            auto expected = brute_force_compositions(photons, bins);
            CHECK(got.size() == expected.size());
            std::set<Pattern> got_set(got.begin(), got.end());
            std::set<Pattern> exp_set(expected.begin(), expected.end());
            CHECK(got_set == exp_set);
        }
    }
    CHECK(compositions(7, 4).size() == 120);
}

TEST_CASE("compositions: rejects zero bins") {
    CHECK_THROWS_AS(compositions(3, 0), std::invalid_argument);
}

TEST_CASE("binomial basics and overflow") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(5, 9) == 0);
    CHECK(binomial(62, 31) > 0);
    CHECK_THROWS_AS(binomial(200, 100), std::overflow_error);
}

TEST_CASE("individual_dim equals stars-and-bars and brute force") {
    CHECK(individual_dim(7, 4) == 120);
    CHECK(individual_dim(1, 5) == 5);
    CHECK(individual_dim(2, 22) == 253);
    for (int photons = 1; photons <= 8; ++photons)
        for (int bins = 1; bins <= 8; ++bins) {
            CHECK(individual_dim(photons, bins) == binomial(photons + bins - 1, bins - 1));
            CHECK(individual_dim(photons, bins) ==
                  static_cast<std::int64_t>(brute_force_compositions(photons, bins).size()));
        }
}

TEST_CASE("average_dim reference values") {
    CHECK(average_dim(7, 4, 2) == 952);
    CHECK(average_dim(8, 4, 2) == 1408);
    CHECK(average_dim(1, 3, 2) == 6);
    CHECK(average_dim(2, 22, 2) == 968);
}

TEST_CASE("average_dim at M = 1 collapses to individual_dim") {
    // M = 1 fails the M >= 2 precondition of average_dim, so check the sum
    // directly: with one symbol per bin the M^k factor is 1.
    for (int photons = 1; photons <= 6; ++photons)
        for (int bins = 1; bins <= 6; ++bins) {
            std::int64_t total = 0;
            for (int k = 1; k <= std::min(bins, photons); ++k)
                total += binomial(photons - 1, k - 1) * binomial(bins, k);
            CHECK(total == individual_dim(photons, bins));
        }
}

TEST_CASE("occupied_count") {
    CHECK(occupied_count({2, 0, 1, 0}) == 2);
    CHECK(occupied_count({0, 0, 0}) == 0);
    CHECK(occupied_count({1, 1, 1, 1, 1}) == 5);
    CHECK(occupied_bins({2, 0, 1, 0}) == std::vector<int>{0, 2});
}

TEST_CASE("build_average_basis: tiny exhaustive case") {
    const SectorBasis basis = build_average_basis(1, 2, 2);
    REQUIRE(basis.size() == 4);
    CHECK(basis[0].pattern == Pattern{1, 0});
    CHECK(basis[0].symbols == std::vector<int>{1});
    CHECK(basis[1].pattern == Pattern{1, 0});
    CHECK(basis[1].symbols == std::vector<int>{2});
    CHECK(basis[2].pattern == Pattern{0, 1});
    CHECK(basis[2].symbols == std::vector<int>{1});
    CHECK(basis[3].pattern == Pattern{0, 1});
    CHECK(basis[3].symbols == std::vector<int>{2});
}

TEST_CASE("build_average_basis: sizes match the counting formula") {
    CHECK(build_average_basis(2, 2, 2).size() == 8);
    CHECK(build_average_basis(5, 5, 2).size() ==
          static_cast<std::size_t>(average_dim(5, 5, 2)));
}

TEST_CASE("build_average_basis: no duplicates, M^k assignments per pattern, stable find") {
    const SectorBasis basis = build_average_basis(3, 3, 2);
    std::set<std::pair<Pattern, std::vector<int>>> seen;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& e = basis[i];
        CHECK(seen.insert({e.pattern, e.symbols}).second);
        CHECK(e.symbols.size() == static_cast<std::size_t>(occupied_count(e.pattern)));
        auto pos = basis.find(e.pattern, e.symbols);
        REQUIRE(pos.has_value());
        CHECK(*pos == i);
    }
    for (const Pattern& p : compositions(3, 3)) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].pattern == p) ++count;
        std::size_t expected = 1;
        for (int k = 0; k < occupied_count(p); ++k) expected *= 2;
        CHECK(count == expected);
    }
    CHECK_FALSE(basis.find({3, 0, 0}, {2, 1}).has_value());
}

TEST_CASE("build_average_basis: dimension cap is enforced and named") {
    CHECK_THROWS_AS(build_average_basis(7, 4, 2, 100), ResourceLimitError);
    try {
        build_average_basis(7, 4, 2, 100);
    } catch (const ResourceLimitError& e) {
        CHECK(std::string(e.what()).find("100") != std::string::npos);
        CHECK(std::string(e.what()).find("952") != std::string::npos);
    }
}
