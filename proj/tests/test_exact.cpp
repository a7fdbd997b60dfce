#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>

#include "frachyp/coloring.hpp"
#include "frachyp/exact.hpp"
#include "frachyp/hypergraph.hpp"
#include "frachyp/rng.hpp"

using namespace frachyp;

namespace {

// independent oracle: plain one-color-per-vertex proper coloring search,
// sharing nothing with the ColorSet machinery under test
bool proper_coloring_exists(const Hypergraph& h, int a) {
    std::vector<int> color(h.vertex_count, -1);
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == h.vertex_count) {
            for (const auto& e : h.edges) {
                bool mono = true;
                for (std::size_t i = 1; i < e.size(); ++i)
                    if (color[e[i]] != color[e[0]]) mono = false;
                if (mono) return false;
            }
            return true;
        }
        for (int c = 0; c < a; ++c) {
            color[v] = c;
            if (self(self, v + 1)) return true;
        }
        color[v] = -1;
        return false;
    };
    return rec(rec, 0);
}

// independent oracle: panchromatic a-coloring search by single colors
bool panchromatic_exists(const Hypergraph& h, int a) {
    std::vector<int> color(h.vertex_count, -1);
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == h.vertex_count) {
            for (const auto& e : h.edges) {
                std::set<int> seen;
                for (int u : e) seen.insert(color[u]);
                if (static_cast<int>(seen.size()) < a) return false;
            }
            return true;
        }
        for (int c = 0; c < a; ++c) {
            color[v] = c;
            if (self(self, v + 1)) return true;
        }
        color[v] = -1;
        return false;
    };
    return rec(rec, 0);
}

// unpruned reference: first proper assignment in lexicographic order
std::optional<std::vector<std::uint64_t>> reference_first_witness(const Hypergraph& h, int a,
                                                                  int b) {
    auto masks = all_color_masks(a, b);
    std::vector<std::uint64_t> cur(h.vertex_count);
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == h.vertex_count) {
            FractionalColoring chi{a, b, cur};
            return is_proper(h, chi);
        }
        for (std::uint64_t m : masks) {
            cur[v] = m;
            if (self(self, v + 1)) return true;
        }
        return false;
    };
    if (rec(rec, 0)) return cur;
    return std::nullopt;
}

}  // namespace

TEST_CASE("pentagon colorability") {
    Hypergraph pentagon = gen_cycle(5);
    auto witness = brute_force_colorable(pentagon, 5, 2);
    REQUIRE(witness.has_value());
    CHECK(is_proper(pentagon, *witness));
    CHECK_FALSE(brute_force_colorable(pentagon, 2, 1).has_value());  // odd cycle
    CHECK(brute_force_colorable(pentagon, 3, 1).has_value());
}

TEST_CASE("single n-uniform edge colorability") {
    for (int n = 2; n <= 4; ++n) {
        Hypergraph one = gen_complete_uniform(n, n);
        CHECK(brute_force_colorable(one, 2, 1).has_value());
        CHECK_FALSE(brute_force_colorable(one, 2, 2).has_value());  // b = a is stuck
        // (3:2) needs ratio 3/2 >= chi_f = n/(n-1); fails exactly at n = 2
        CHECK(brute_force_colorable(one, 3, 2).has_value() == (n >= 3));
    }
}

TEST_CASE("b=1 agrees with the direct proper coloring enumerator") {
    Rng rng(21);
    for (int trial = 0; trial < 120; ++trial) {
        int v = 3 + static_cast<int>(rng.below(4));
        int n = 2 + static_cast<int>(rng.below(2));
        if (n > v) n = v;
        Hypergraph h = gen_random_uniform(v, n, 1 + static_cast<int>(rng.below(9)),
                                          rng.next_u64());
        for (int a = 2; a <= 4; ++a)
            CHECK(brute_force_colorable(h, a, 1).has_value() == proper_coloring_exists(h, a));
    }
}

TEST_CASE("b=a-1 agrees with the panchromatic enumerator") {
    Rng rng(22);
    for (int trial = 0; trial < 60; ++trial) {
        int v = 3 + static_cast<int>(rng.below(3));
        int n = 2 + static_cast<int>(rng.below(2));
        if (n > v) n = v;
        Hypergraph h = gen_random_uniform(v, n, 1 + static_cast<int>(rng.below(6)),
                                          rng.next_u64());
        for (int a = 2; a <= 3; ++a)
            CHECK(brute_force_colorable(h, a, a - 1).has_value() == panchromatic_exists(h, a));
    }
}

TEST_CASE("colorability is monotone in a and under scaling") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        int v = 3 + static_cast<int>(rng.below(4));
        Hypergraph h = gen_random_uniform(v, 2, 1 + static_cast<int>(rng.below(8)),
                                          rng.next_u64());
        for (int a = 2; a <= 4; ++a) {
            for (int b = 1; b < a; ++b) {
                if (!brute_force_colorable(h, a, b)) continue;
                CHECK(brute_force_colorable(h, a + 1, b).has_value());
                CHECK(brute_force_colorable(h, 2 * a, 2 * b, 1'000'000'000'000ULL).has_value());
            }
        }
    }
}

TEST_CASE("witness is the lexicographically first proper assignment") {
    Rng rng(24);
    for (int trial = 0; trial < 40; ++trial) {
        int v = 3 + static_cast<int>(rng.below(2));
        Hypergraph h = gen_random_uniform(v, 2, 1 + static_cast<int>(rng.below(5)),
                                          rng.next_u64());
        auto expect = reference_first_witness(h, 3, 1);
        auto got = brute_force_colorable(h, 3, 1);
        CHECK(got.has_value() == expect.has_value());
        if (got && expect) CHECK(got->sets == *expect);
    }
}

TEST_CASE("budget precheck") {
    Hypergraph h = gen_random_uniform(10, 3, 10, 5);
    CHECK_THROWS_AS(brute_force_colorable(h, 10, 5, 1000), BudgetExceeded);
    CHECK(enumeration_budget() == 100'000'000ULL);
}

TEST_CASE("independent set enumeration") {
    SUBCASE("2-uniform K3: empty set and singletons; maximal = singletons") {
        Hypergraph k3 = gen_complete_uniform(3, 2);
        auto all = enumerate_independent_sets(k3, false);
        CHECK(all.sets == std::vector<std::uint32_t>{0b000, 0b001, 0b010, 0b100});
        auto maximal = enumerate_independent_sets(k3, true);
        CHECK(maximal.sets == std::vector<std::uint32_t>{0b001, 0b010, 0b100});
    }
    SUBCASE("single 3-uniform edge: maximal sets are the three 2-subsets") {
        Hypergraph one = gen_complete_uniform(3, 3);
        auto maximal = enumerate_independent_sets(one, true);
        CHECK(maximal.sets == std::vector<std::uint32_t>{0b011, 0b101, 0b110});
    }
    SUBCASE("pentagon: 5 maximal independent sets of size 2") {
        auto maximal = enumerate_independent_sets(gen_cycle(5), true);
        REQUIRE(maximal.sets.size() == 5);
        for (auto s : maximal.sets) CHECK(std::popcount(s) == 2);
    }
    SUBCASE("exhaustive subset-scan oracle on random instances") {
        Rng rng(31);
        for (int trial = 0; trial < 30; ++trial) {
            int v = 3 + static_cast<int>(rng.below(4));
            int n = 2 + static_cast<int>(rng.below(2));
            if (n > v) n = v;
            Hypergraph h = gen_random_uniform(v, n, 1 + static_cast<int>(rng.below(6)),
                                              rng.next_u64());
            std::vector<std::uint32_t> edge_masks;
            for (const auto& e : h.edges) {
                std::uint32_t m = 0;
                for (int u : e) m |= 1U << u;
                edge_masks.push_back(m);
            }
            std::vector<std::uint32_t> expect_all, expect_max;
            for (std::uint32_t s = 0; s < (1U << v); ++s) {
                bool indep = true;
                for (auto em : edge_masks)
                    if ((s & em) == em) indep = false;
                if (indep) expect_all.push_back(s);
            }
            std::set<std::uint32_t> indep_set(expect_all.begin(), expect_all.end());
            for (std::uint32_t s : expect_all) {
                bool maximal = true;
                for (int u = 0; u < v; ++u)
                    if (!(s >> u & 1) && indep_set.count(s | (1U << u))) maximal = false;
                if (maximal) expect_max.push_back(s);
            }
            CHECK(enumerate_independent_sets(h, false).sets == expect_all);
            CHECK(enumerate_independent_sets(h, true).sets == expect_max);
        }
    }
    SUBCASE("vertex budget") {
        Hypergraph big = gen_random_uniform(25, 3, 5, 1);
        CHECK_THROWS_AS(enumerate_independent_sets(big, true), BudgetExceeded);
    }
}

TEST_CASE("chi_f via (a:b) search") {
    CHECK(chi_f_via_ab_search(gen_cycle(5), 5) == Rational(5, 2));
    CHECK(chi_f_via_ab_search(gen_complete_uniform(3, 2), 3) == Rational(3));
    CHECK(chi_f_via_ab_search(gen_complete_uniform(3, 3), 3) == Rational(3, 2));
    CHECK(chi_f_via_ab_search(make_hypergraph(4, 2, {}), 3) == Rational(1));
    SUBCASE("NotFound when a_max is too small") {
        CHECK_THROWS_AS(chi_f_via_ab_search(gen_complete_uniform(3, 2), 2), NotFound);
    }
}
