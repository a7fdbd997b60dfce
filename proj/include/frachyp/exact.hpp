#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

#include "frachyp/coloring.hpp"
#include "frachyp/errors.hpp"
#include "frachyp/hypergraph.hpp"
#include "frachyp/rational.hpp"

namespace frachyp {

/// Default assignment budget for exhaustive searches; FRACHYP_BUDGET overrides.
inline std::uint64_t enumeration_budget() {
    if (const char* env = std::getenv("FRACHYP_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 100'000'000ULL;
}

/// All b-subset masks of {0,...,a-1} in lexicographic order of the sorted
/// color lists.
inline std::vector<std::uint64_t> all_color_masks(int a, int b) {
    if (a < 1 || a > kMaxPalette || b < 1 || b > a)
        throw InvalidParams("all_color_masks requires 1 <= b <= a <= 64");
    std::vector<std::uint64_t> masks;
    std::vector<int> cur(b);
    for (int i = 0; i < b; ++i) cur[i] = i;
    for (;;) {
        std::uint64_t m = 0;
        for (int c : cur) m |= 1ULL << c;
        masks.push_back(m);
        int i = b - 1;
        while (i >= 0 && cur[i] == a - b + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < b; ++j) cur[j] = cur[j - 1] + 1;
    }
    return masks;
}

namespace detail {

/// True when choices^vertices exceeds the budget.
inline bool assignment_space_exceeds(std::uint64_t choices, int vertices, std::uint64_t budget) {
    std::uint64_t total = 1;
    for (int i = 0; i < vertices; ++i) {
        if (total > budget / choices) return true;
        total *= choices;
    }
    return total > budget;
}

}  // namespace detail

/**
 * Exhaustive (a:b)-colorability test.  Returns the lexicographically first
 * proper coloring (vertices in id order, color sets in lexicographic order)
 * or nullopt when none exists.  Prunes a branch as soon as a fully assigned
 * edge keeps a common color; pruning cannot change the answer or the witness.
 */
inline std::optional<FractionalColoring> brute_force_colorable(
    const Hypergraph& h, int a, int b, std::uint64_t budget = enumeration_budget()) {
    const auto masks = all_color_masks(a, b);
    if (detail::assignment_space_exceeds(masks.size(), h.vertex_count, budget))
        throw BudgetExceeded("brute force: C(a,b)^|V| exceeds budget");

    const auto inc = incidence_lists(h);
    std::vector<int> last_vertex;
    last_vertex.reserve(h.edges.size());
    for (const auto& e : h.edges) last_vertex.push_back(e.back());

    const std::uint64_t palette = full_mask(a);
    std::vector<std::uint64_t> partial(h.edges.size(), ~0ULL);
    std::vector<std::uint64_t> assignment(h.vertex_count, 0);
    std::vector<std::uint64_t> undo;  // interleaved (edge, previous partial)

    auto assign = [&](auto&& self, int v) -> bool {
        if (v == h.vertex_count) return true;
        for (std::uint64_t m : masks) {
            std::size_t mark = undo.size();
            bool ok = true;
            for (int e : inc[v]) {
                undo.push_back(static_cast<std::uint64_t>(e));
                undo.push_back(partial[e]);
                partial[e] &= m;
                if (last_vertex[e] == v && (partial[e] & palette)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                assignment[v] = m;
                if (self(self, v + 1)) return true;
            }
            while (undo.size() > mark) {
                std::uint64_t old = undo.back();
                undo.pop_back();
                int e = static_cast<int>(undo.back());
                undo.pop_back();
                partial[e] = old;
            }
        }
        return false;
    };
    if (!assign(assign, 0)) return std::nullopt;
    return FractionalColoring{a, b, std::move(assignment)};
}

/// Vertex sets containing no full edge of h, as bit masks over <= 24 vertices.
struct IndependentSetFamily {
    int vertex_count = 0;
    bool maximal_only = false;
    std::vector<std::uint32_t> sets;

    std::vector<int> members(std::size_t i) const {
        std::vector<int> out;
        for (int v = 0; v < vertex_count; ++v)
            if ((sets[i] >> v) & 1) out.push_back(v);
        return out;
    }
};

inline IndependentSetFamily enumerate_independent_sets(const Hypergraph& h, bool maximal_only,
                                                       int max_vertices = 24) {
    if (h.vertex_count > max_vertices)
        throw BudgetExceeded("independent set enumeration limited to " +
                             std::to_string(max_vertices) + " vertices");
    std::vector<std::uint32_t> edge_masks;
    edge_masks.reserve(h.edges.size());
    for (const auto& e : h.edges) {
        std::uint32_t m = 0;
        for (int v : e) m |= 1U << v;
        edge_masks.push_back(m);
    }
    auto independent = [&](std::uint32_t s) {
        for (std::uint32_t em : edge_masks)
            if ((s & em) == em) return false;
        return true;
    };

    IndependentSetFamily fam{h.vertex_count, maximal_only, {}};
    const std::uint32_t all = h.vertex_count == 32 ? ~0U : ((1U << h.vertex_count) - 1);
    for (std::uint32_t s = 0;; ++s) {
        if (independent(s)) {
            bool keep = true;
            if (maximal_only) {
                for (int v = 0; v < h.vertex_count && keep; ++v) {
                    std::uint32_t bit = 1U << v;
                    if (!(s & bit) && independent(s | bit)) keep = false;
                }
            }
            if (keep) fam.sets.push_back(s);
        }
        if (s == all) break;
    }
    return fam;
}

/**
 * Smallest ratio a/b with a <= a_max, 1 <= b < a and h brute-force
 * (a:b)-colorable.  Pairs of equal ratio are all tried (colorability is not
 * invariant under reducing a:b).  An edgeless hypergraph gets ratio 1 (the
 * one-color coloring is vacuously proper).  Throws NotFound when no pair
 * works.  When witness is non-null it receives the coloring that attained
 * the minimum.
 */
inline Rational chi_f_via_ab_search(const Hypergraph& h, int a_max,
                                    std::uint64_t budget = enumeration_budget(),
                                    std::optional<FractionalColoring>* witness = nullptr) {
    if (a_max < 2) throw InvalidParams("chi_f_via_ab_search requires a_max >= 2");
    if (h.edges.empty()) return Rational(1);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 2; a <= a_max; ++a)
        for (int b = 1; b < a; ++b) pairs.push_back({a, b});
    std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
        long long lhs = static_cast<long long>(x.first) * y.second;
        long long rhs = static_cast<long long>(y.first) * x.second;
        if (lhs != rhs) return lhs < rhs;
        return x.first < y.first;
    });
    for (auto [a, b] : pairs) {
        auto coloring = brute_force_colorable(h, a, b, budget);
        if (coloring) {
            if (witness) *witness = std::move(coloring);
            return Rational(a, b);
        }
    }
    throw NotFound("no (a:b)-coloring with a <= " + std::to_string(a_max));
}

}  // namespace frachyp
