#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "frachyp/alon.hpp"
#include "frachyp/coloring.hpp"
#include "frachyp/hypergraph.hpp"
#include "frachyp/rng.hpp"

using namespace frachyp;

TEST_CASE("working color count") {
    CHECK(a_prime(10, 5) == 8);  // exact division, reserve 2
    CHECK(a_prime(7, 3) == 4);   // reserve 3 = ceil(7/3)
    CHECK(a_prime(9, 3) == 6);
    CHECK_THROWS_AS(a_prime(0, 3), InvalidParams);
    CHECK_THROWS_AS(a_prime(5, 1), InvalidParams);

    SUBCASE("a - a' = ceil(a/n) for all a, n up to 1000") {
        for (int a = 1; a <= 1000; ++a)
            for (int n : {2, 3, 4, 5, 7, 17, 100, 999, 1000})
                CHECK(a - a_prime(a, n) == (a + n - 1) / n);
    }
}

TEST_CASE("precondition report") {
    SUBCASE("the (3,9,1) configuration") {
        // a/b = 9 = n^(n-1) exactly, so the ratio window just misses
        Hypergraph h = gen_random_uniform(30, 3, 79, 1);
        AlonPrecondition pre = precondition_alon(h, 9, 1);
        CHECK(pre.working_colors == 6);
        CHECK(pre.reserve_colors == 3);
        CHECK_FALSE(pre.ratio_window);
        CHECK(pre.edge_budget == doctest::Approx(216.0 / std::numbers::e));
        CHECK(pre.edge_budget_ok);  // 79 = floor(216/e)
        CHECK(pre.proof_condition_ok);  // 6 (1/6)^3 = 1/36
        CHECK(pre.reserve_ge_b);
    }
    SUBCASE("ratio window") {
        Hypergraph h = gen_random_uniform(12, 3, 4, 2);
        CHECK_FALSE(precondition_alon(h, 5, 2).ratio_window);   // a/b < n
        CHECK(precondition_alon(h, 6, 2).ratio_window);         // 3 <= 3 < 9
        CHECK(precondition_alon(h, 17, 2).ratio_window);        // 8.5 < 9
        CHECK_FALSE(precondition_alon(h, 18, 2).ratio_window);  // 9 = n^(n-1)
    }
    SUBCASE("edge budget boundary") {
        // a = 12, b = 1, n = 3: a' = 8, budget = 512/e = 188.36...
        const int boundary = static_cast<int>(512.0 / std::numbers::e);
        Hypergraph at = gen_random_uniform(20, 3, boundary, 3);
        Hypergraph over = gen_random_uniform(20, 3, boundary + 1, 3);
        CHECK(precondition_alon(at, 12, 1).edge_budget_ok);
        CHECK_FALSE(precondition_alon(over, 12, 1).edge_budget_ok);
    }
}

TEST_CASE("expected recoloring bound") {
    SUBCASE("b = 1 collapses to m a' (1/a')^n") {
        for (int ap : {3, 6, 9})
            for (int n : {2, 3, 4})
                CHECK(expected_recolorings_bound(ap, 1, n, 10) ==
                      doctest::Approx(10.0 * ap * std::pow(1.0 / ap, n)).epsilon(1e-12));
    }
    SUBCASE("m = 0 gives 0") { CHECK(expected_recolorings_bound(4, 2, 3, 0) == 0.0); }
    SUBCASE("frozen exact value at (a',b,n,m) = (4,2,3,2)") {
        // k=1: 4 (C(3,1)/C(4,2))^3 = 4 (1/2)^3 = 1/2
        // k=2: 2 C(4,2) (1/C(4,2))^3 = 12/216 = 1/18
        // total per edge 5/9, times m = 2 -> 10/9
        CHECK(expected_recolorings_bound(4, 2, 3, 2) == doctest::Approx(10.0 / 9.0).epsilon(1e-12));
    }
    SUBCASE("bounded by a' whenever the preconditions pass") {
        Rng rng(17);
        for (int trial = 0; trial < 200; ++trial) {
            int n = 2 + static_cast<int>(rng.below(3));
            int b = 1 + static_cast<int>(rng.below(2));
            int a = b * n + static_cast<int>(rng.below(20));
            if (a > 64) a = 64;
            int ap = a_prime(a, n);
            if (ap < b) continue;
            double budget = std::exp(-1.0) * std::pow(static_cast<double>(ap) / b, n);
            long long m = static_cast<long long>(budget);
            bool proof_ok = ap * std::pow(static_cast<double>(b) / (ap - b + 1), n) <= 1.0;
            if (!proof_ok) continue;
            CHECK(expected_recolorings_bound(ap, b, n, m) <= ap + 1e-9);
        }
    }
}

TEST_CASE("solver end to end at (3,9,1)") {
    Rng seeds(2025);
    int total_repairs = 0;
    const int runs = 200;
    for (int i = 0; i < runs; ++i) {
        Hypergraph h = gen_random_uniform(30, 3, 79, seeds.next_u64());
        AlonOutcome out = solve_alon(h, AlonParams{9, 1, seeds.next_u64(), 50});
        CHECK(is_proper(h, out.coloring));
        validate_coloring(out.coloring);
        for (int use : out.ledger.reserve_use) CHECK(use <= 2);  // n-1 = 2
        CHECK(out.ledger.attempts <= 50);
        total_repairs += static_cast<int>(out.ledger.events.size());
        // ledger events only introduce reserve colors
        for (const auto& ev : out.ledger.events) {
            CHECK(ev.added_color >= out.ledger.working_colors);
            CHECK(ev.removed_color < out.ledger.working_colors);
        }
    }
    // Markov-consistency: empirical mean below the analytic expectation + 3 sigma
    const double bound = expected_recolorings_bound(6, 1, 3, 79);
    const double mean = static_cast<double>(total_repairs) / runs;
    CHECK(mean <= bound + 3.0 * std::sqrt(bound / runs) + 0.5);
}

TEST_CASE("no-op when the initial coloring is already proper") {
    Rng seeds(31);
    int seen = 0;
    for (int i = 0; i < 200 && seen < 5; ++i) {
        Hypergraph h = gen_random_uniform(20, 3, 10, seeds.next_u64());
        std::uint64_t solver_seed = seeds.next_u64();
        AlonOutcome out = solve_alon(h, AlonParams{9, 1, solver_seed, 50});
        if (out.ledger.events.empty()) {
            ++seen;
            // replay the sampling to confirm the returned coloring is the initial one
            Rng replay(solver_seed);
            FractionalColoring chi{9, 1, {}};
            for (int v = 0; v < 20; ++v) chi.sets.push_back(random_color_mask(6, 1, replay));
            CHECK(out.coloring == chi);
        }
    }
    CHECK(seen == 5);
}

TEST_CASE("determinism") {
    Hypergraph h = gen_random_uniform(30, 3, 79, 5);
    AlonOutcome a = solve_alon(h, AlonParams{9, 1, 7, 50});
    AlonOutcome b = solve_alon(h, AlonParams{9, 1, 7, 50});
    CHECK(a.coloring == b.coloring);
    CHECK(a.ledger.events.size() == b.ledger.events.size());
    CHECK(a.ledger.attempts == b.ledger.attempts);
}

TEST_CASE("doubly monochromatic edge accumulates two repairs at one vertex") {
    // found by seed scan: edge 1 starts monochromatic in two colors, both
    // replaced at vertex 5 by distinct reserve colors
    Hypergraph h = gen_random_uniform(8, 2, 6, 309);
    AlonOutcome out = solve_alon(h, AlonParams{10, 2, 4, 1});
    int at_vertex5_edge1 = 0;
    std::set<int> added;
    for (const auto& ev : out.ledger.events) {
        if (ev.vertex == 5 && ev.edge == 1) {
            ++at_vertex5_edge1;
            CHECK(added.insert(ev.added_color).second);  // distinct reserves
        }
    }
    CHECK(at_vertex5_edge1 == 2);
    CHECK(is_proper(h, out.coloring));
    // no edge may end monochromatic in a reserve color, directly
    const std::uint64_t reserve_palette = full_mask(10) ^ full_mask(out.ledger.working_colors);
    for (const auto& e : h.edges) {
        std::uint64_t common = ~0ULL;
        for (int v : e) common &= out.coloring.sets[v];
        CHECK((common & reserve_palette) == 0);
    }
}

TEST_CASE("multi-color repairs with b = 2") {
    // n = 2, a = 8: a' = 4, reserve 4, capacity n-1 = 1 per reserve color
    Rng seeds(71);
    for (int i = 0; i < 100; ++i) {
        Hypergraph h = gen_random_uniform(12, 2, 4, seeds.next_u64());
        try {
            AlonOutcome out = solve_alon(h, AlonParams{8, 2, seeds.next_u64(), 80});
            CHECK(is_proper(h, out.coloring));
            validate_coloring(out.coloring);
            for (int use : out.ledger.reserve_use) CHECK(use <= 1);
        } catch (const AttemptsExhausted&) {
            // legal outcome outside the guaranteed regime; just rare
        }
    }
}

TEST_CASE("parameter validation") {
    Hypergraph h = gen_random_uniform(10, 3, 5, 1);
    CHECK_THROWS_AS(solve_alon(h, AlonParams{9, 1, 0, 0}), InvalidParams);
    CHECK_THROWS_AS(solve_alon(h, AlonParams{0, 1, 0, 10}), InvalidParams);
    // a' = floor(3*2/3) = 2 < b = 3: no working coloring possible
    CHECK_THROWS_AS(solve_alon(h, AlonParams{3, 3, 0, 10}), InvalidParams);
    Hypergraph unit = make_hypergraph(3, 1, {{0}});
    CHECK_THROWS_AS(solve_alon(unit, AlonParams{9, 1, 0, 10}), InvalidParams);
}
