#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "frachyp/exact.hpp"
#include "frachyp/hypergraph.hpp"
#include "frachyp/lp.hpp"
#include "frachyp/rng.hpp"

using namespace frachyp;

namespace {

// Petersen graph as the Kneser graph K(5,2): vertices are 2-subsets of [5],
// edges join disjoint pairs
Hypergraph petersen() {
    std::vector<std::pair<int, int>> labels;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) labels.push_back({i, j});
    std::vector<std::vector<int>> edges;
    for (std::size_t x = 0; x < labels.size(); ++x) {
        for (std::size_t y = x + 1; y < labels.size(); ++y) {
            auto [a, b] = labels[x];
            auto [c, d] = labels[y];
            if (a != c && a != d && b != c && b != d)
                edges.push_back({static_cast<int>(x), static_cast<int>(y)});
        }
    }
    return make_hypergraph(10, 2, std::move(edges));
}

Rational check_pair(const Hypergraph& h) {
    auto primal = chi_f_primal(h);
    auto dual = chi_f_dual(h);
    REQUIRE(primal.status == LPStatus::optimal);
    REQUIRE(dual.status == LPStatus::optimal);
    CHECK(primal.value == dual.value);  // exact rational equality
    // dual feasibility of the reported vertex weights
    auto fam = enumerate_independent_sets(h, true);
    for (std::uint32_t s : fam.sets) {
        Rational sum(0);
        for (int v = 0; v < h.vertex_count; ++v)
            if ((s >> v) & 1) sum += dual.vertex_weights[v];
        CHECK(sum <= Rational(1));
    }
    return primal.value;
}

}  // namespace

TEST_CASE("simplex solves tiny known LPs") {
    SUBCASE("max x+y, x<=2, y<=3") {
        RationalSimplex lp(2);
        lp.set_objective({Rational(1), Rational(1)});
        lp.add_constraint({Rational(1), Rational(0)}, false, Rational(2));
        lp.add_constraint({Rational(0), Rational(1)}, false, Rational(3));
        auto sol = lp.solve();
        REQUIRE(sol.status == LPStatus::optimal);
        CHECK(sol.objective == Rational(5));
        CHECK(sol.x[0] == Rational(2));
        CHECK(sol.x[1] == Rational(3));
    }
    SUBCASE("degenerate / fractional optimum") {
        // max 3x+2y, x+y<=4, x+3y<=6  -> x=4, y=0, value 12
        RationalSimplex lp(2);
        lp.set_objective({Rational(3), Rational(2)});
        lp.add_constraint({Rational(1), Rational(1)}, false, Rational(4));
        lp.add_constraint({Rational(1), Rational(3)}, false, Rational(6));
        auto sol = lp.solve();
        REQUIRE(sol.status == LPStatus::optimal);
        CHECK(sol.objective == Rational(12));
    }
    SUBCASE("greater-equal rows force phase 1") {
        // min x+y with x+2y>=3, 2x+y>=3 -> x=y=1, value 2
        RationalSimplex lp(2);
        lp.set_objective({Rational(-1), Rational(-1)});
        lp.add_constraint({Rational(1), Rational(2)}, true, Rational(3));
        lp.add_constraint({Rational(2), Rational(1)}, true, Rational(3));
        auto sol = lp.solve();
        REQUIRE(sol.status == LPStatus::optimal);
        CHECK(sol.objective == Rational(-2));
        CHECK(sol.x[0] == Rational(1));
        CHECK(sol.x[1] == Rational(1));
    }
    SUBCASE("infeasible") {
        RationalSimplex lp(1);
        lp.set_objective({Rational(1)});
        lp.add_constraint({Rational(1)}, false, Rational(1));
        lp.add_constraint({Rational(1)}, true, Rational(2));
        CHECK(lp.solve().status == LPStatus::infeasible);
    }
    SUBCASE("unbounded") {
        RationalSimplex lp(1);
        lp.set_objective({Rational(1)});
        lp.add_constraint({Rational(-1)}, false, Rational(1));
        CHECK(lp.solve().status == LPStatus::unbounded);
    }
}

TEST_CASE("pentagon: chi_f = 5/2 and the matching LP agrees there") {
    Hypergraph pentagon = gen_cycle(5);
    auto primal = chi_f_primal(pentagon);
    REQUIRE(primal.status == LPStatus::optimal);
    CHECK(primal.value == Rational(5, 2));
    // reported weights are a feasible cover of that value
    Rational total(0);
    for (const auto& [mask, f] : primal.independent_set_weights) {
        CHECK(f.sign() > 0);
        total += f;
    }
    CHECK(total == Rational(5, 2));

    CHECK(chi_f_dual(pentagon).value == Rational(5, 2));

    auto matching = fractional_matching(pentagon);
    CHECK(matching.value == Rational(5, 2));  // w(e) = 1/2 happens to be optimal here
    for (const auto& w : matching.edge_weights) CHECK(w == Rational(1, 2));
}

TEST_CASE("single n-uniform edge: chi_f = n/(n-1), matching stays at 1") {
    for (int n = 2; n <= 5; ++n) {
        Hypergraph one = gen_complete_uniform(n, n);
        CHECK(check_pair(one) == Rational(n, n - 1));
        // the edge-weight program of the printed duality statement caps at 1
        CHECK(fractional_matching(one).value == Rational(1));
    }
}

TEST_CASE("complete graphs and cycles") {
    CHECK(check_pair(gen_complete_uniform(3, 2)) == Rational(3));
    CHECK(check_pair(gen_complete_uniform(4, 2)) == Rational(4));
    CHECK(check_pair(gen_complete_uniform(5, 2)) == Rational(5));
    CHECK(check_pair(gen_cycle(4)) == Rational(2));
    CHECK(check_pair(gen_cycle(6)) == Rational(2));
    CHECK(check_pair(gen_cycle(7)) == Rational(7, 3));
    CHECK(check_pair(gen_cycle(9)) == Rational(9, 4));
}

TEST_CASE("Petersen graph: chi_f = 5/2") {
    CHECK(check_pair(petersen()) == Rational(5, 2));
}

TEST_CASE("edgeless and degenerate cases") {
    Hypergraph edgeless = make_hypergraph(4, 2, {});
    CHECK(chi_f_primal(edgeless).value == Rational(1));
    CHECK(chi_f_dual(edgeless).value == Rational(1));
    CHECK(fractional_matching(edgeless).value == Rational(0));  // empty sum

    Hypergraph empty = make_hypergraph(0, 1, {});
    CHECK(chi_f_primal(empty).value == Rational(0));

    // a 1-uniform edge leaves its vertex in no independent set
    Hypergraph loop = make_hypergraph(2, 1, {{0}});
    CHECK(chi_f_primal(loop).status == LPStatus::infeasible);
    CHECK(chi_f_dual(loop).status == LPStatus::unbounded);
}

TEST_CASE("strong duality on random instances") {
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        int v = 3 + static_cast<int>(rng.below(6));
        int n = 2 + static_cast<int>(rng.below(2));
        if (n > v) n = v;
        Hypergraph h = gen_random_uniform(v, n, 1 + static_cast<int>(rng.below(10)),
                                          rng.next_u64());
        check_pair(h);
    }
}

namespace {

// oracle pieces for the randomized simplex stress test: with x >= 0 the
// feasible region is pointed, so a nonempty region has a vertex and a bounded
// optimum is attained at one; vertices are intersections of n active
// hyperplanes drawn from the constraint rows and the axes
struct DenseLP {
    int n;
    std::vector<Rational> c;
    std::vector<std::vector<Rational>> rows;
    std::vector<bool> ge;
    std::vector<Rational> rhs;
};

std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m,
                                                  std::vector<Rational> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (!m[row][col].is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) return std::nullopt;  // singular
        std::swap(m[col], m[pivot]);
        std::swap(b[col], b[pivot]);
        Rational inv = Rational(1) / m[col][col];
        for (auto& v : m[col]) v *= inv;
        b[col] *= inv;
        for (int row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            Rational f = m[row][col];
            for (int k = 0; k < n; ++k) m[row][k] -= f * m[col][k];
            b[row] -= f * b[col];
        }
    }
    return b;
}

bool feasible_point(const DenseLP& lp, const std::vector<Rational>& x) {
    for (const auto& xi : x)
        if (xi < Rational(0)) return false;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        Rational dot(0);
        for (int j = 0; j < lp.n; ++j) dot += lp.rows[i][j] * x[j];
        if (lp.ge[i] ? dot < lp.rhs[i] : dot > lp.rhs[i]) return false;
    }
    return true;
}

// all vertices of the feasible region, by brute force over active sets
std::vector<std::vector<Rational>> feasible_vertices(const DenseLP& lp) {
    const int total = static_cast<int>(lp.rows.size()) + lp.n;
    std::vector<int> pick(lp.n);
    std::vector<std::vector<Rational>> vertices;
    auto rec = [&](auto&& self, int depth, int from) -> void {
        if (depth == lp.n) {
            std::vector<std::vector<Rational>> m(lp.n, std::vector<Rational>(lp.n, Rational(0)));
            std::vector<Rational> b(lp.n, Rational(0));
            for (int i = 0; i < lp.n; ++i) {
                if (pick[i] < static_cast<int>(lp.rows.size())) {
                    m[i] = lp.rows[pick[i]];
                    b[i] = lp.rhs[pick[i]];
                } else {
                    m[i][pick[i] - lp.rows.size()] = Rational(1);
                }
            }
            auto x = solve_square(std::move(m), std::move(b));
            if (x && feasible_point(lp, *x)) vertices.push_back(*x);
            return;
        }
        for (int i = from; i < total; ++i) {
            pick[depth] = i;
            self(self, depth + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return vertices;
}

}  // namespace

TEST_CASE("simplex agrees with exact vertex enumeration on random LPs") {
    Rng rng(314159);
    int optimal_seen = 0, infeasible_seen = 0, unbounded_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        DenseLP lp;
        lp.n = 2 + static_cast<int>(rng.below(2));
        int m = 2 + static_cast<int>(rng.below(3));
        auto coef = [&]() { return Rational(static_cast<std::int64_t>(rng.below(7)) - 3); };
        for (int j = 0; j < lp.n; ++j) lp.c.push_back(coef());
        for (int i = 0; i < m; ++i) {
            std::vector<Rational> row;
            for (int j = 0; j < lp.n; ++j) row.push_back(coef());
            lp.rows.push_back(std::move(row));
            lp.ge.push_back(rng.below(2) == 1);
            lp.rhs.push_back(Rational(static_cast<std::int64_t>(rng.below(8)) - 2));
        }

        RationalSimplex simplex(lp.n);
        simplex.set_objective(lp.c);
        for (int i = 0; i < m; ++i) simplex.add_constraint(lp.rows[i], lp.ge[i], lp.rhs[i]);
        auto sol = simplex.solve();
        auto vertices = feasible_vertices(lp);

        if (sol.status == LPStatus::infeasible) {
            ++infeasible_seen;
            CHECK(vertices.empty());
            continue;
        }
        REQUIRE_FALSE(vertices.empty());
        Rational best = [&] {
            Rational r(0);
            bool first = true;
            for (const auto& x : vertices) {
                Rational value(0);
                for (int j = 0; j < lp.n; ++j) value += lp.c[j] * x[j];
                if (first || value > r) r = value, first = false;
            }
            return r;
        }();
        if (sol.status == LPStatus::unbounded) {
            ++unbounded_seen;
            continue;  // no finite optimum to compare
        }
        ++optimal_seen;
        CHECK(sol.objective == best);
        CHECK(feasible_point(lp, sol.x));
    }
    // the random mix must exercise all three statuses
    CHECK(optimal_seen > 50);
    CHECK(infeasible_seen > 20);
    CHECK(unbounded_seen > 20);
}

TEST_CASE("search consistency: ab search never beats the LP") {
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        int v = 3 + static_cast<int>(rng.below(3));
        Hypergraph h = gen_random_uniform(v, 2, 1 + static_cast<int>(rng.below(6)),
                                          rng.next_u64());
        Rational lp_value = chi_f_primal(h).value;
        Rational searched = chi_f_via_ab_search(h, 5);
        CHECK(searched >= lp_value);
        // when a_max covers the optimal denominator the search is exact
        if (lp_value.den() <= BigInt(4) && lp_value.num() <= BigInt(5))
            CHECK(searched == lp_value);
    }
}
