#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <unordered_map>
#include <vector>

#include "frachyp/coloring.hpp"
#include "frachyp/errors.hpp"
#include "frachyp/hypergraph.hpp"
#include "frachyp/rng.hpp"

namespace frachyp {

/**
 * Randomized recoloring solver for (a:b)-fractional colorings.
 *
 * The algorithm: color every vertex with a uniform b-subset of the palette,
 * give every vertex an independent U(0,1) weight, and then let each light
 * vertex (weight below the threshold) that sits in an initially monochromatic
 * edge swap one of the offending colors for the next free color modulo a.
 * Recoloring is triggered only by *initially* monochromatic edges, never by
 * edges that become monochromatic later.
 *
 * Failures decompose into five event classes:
 *   B1  an initially monochromatic edge all of whose vertices are heavy
 *   B2  an edge initially monochromatic in two distinct colors
 *   B3  a light vertex in two initially monochromatic edges of distinct colors
 *   B4  an edge turned monochromatic by a recoloring triggered by another edge
 *   B5  an edge turned monochromatic by a recoloring triggered by itself
 */

/// Light/heavy weight threshold, (1/2) ln(n/ln n)/n. Natural log throughout.
inline double threshold_p(int n) {
    if (n <= 2) throw InvalidParams("threshold_p requires n >= 3");
    return 0.5 * std::log(n / std::log(static_cast<double>(n))) / n;
}

/// Constant c = (a^3 b)^(-1/2) from the union-bound choice.
inline double thm1_constant_c(int a, int b) {
    if (a < 1 || b < 1) throw InvalidParams("thm1_constant_c requires a, b >= 1");
    return 1.0 / std::sqrt(static_cast<double>(a) * a * a * b);
}

inline bool thm1_regime_ok(int n, int a, int b) {
    return 2 <= b && b <= a - 2 &&
           static_cast<double>(a - 2) <= n / (2.0 * std::log(static_cast<double>(n)));
}

struct EdgeBudget {
    double value;       // (a b^3)^(-1/2) (n/ln n)^(1/2) (a/b)^(n-1)
    double proof_form;  // c (n/ln n)^(1/2) (a/b)^n with c = (a^3 b)^(-1/2)
    double constant_c;
    bool regime_ok;  // 2 <= b <= a-2 <= n/(2 ln n); violation is a flag, not an error
};

/// Edge budget under which the solver succeeds with positive probability.
inline EdgeBudget edge_budget_thm1(int n, int a, int b) {
    if (n < 2 || a < 1 || b < 1 || b > a) throw InvalidParams("edge_budget_thm1: bad parameters");
    const double ratio = static_cast<double>(a) / b;
    const double root = std::sqrt(n / std::log(static_cast<double>(n)));
    EdgeBudget out;
    out.value = std::pow(static_cast<double>(a) * b * b * b, -0.5) * root * std::pow(ratio, n - 1);
    out.constant_c = thm1_constant_c(a, b);
    out.proof_form = out.constant_c * root * std::pow(ratio, n);
    out.regime_ok = thm1_regime_ok(n, a, b);
    return out;
}

struct Thm1Bounds {
    double b1, b2, b3, b4, b5;
    double total;
    double c;
    bool theorem_regime_ok;
    bool proof_conditions_ok;  // a < n/ln n and a^(3/2) c < 1 (needed for B2, B5)
};

/// Closed-form upper bounds on the five bad events and their union.
inline Thm1Bounds bad_event_bounds(int n, int a, int b, std::optional<double> c = std::nullopt) {
    if (n < 3 || b < 1 || a <= b) throw InvalidParams("bad_event_bounds: need n >= 3, a > b >= 1");
    Thm1Bounds out;
    out.c = c.value_or(thm1_constant_c(a, b));
    const double e = std::numbers::e;
    out.b1 = a * out.c;
    out.b2 = 1.0 / n;
    out.b3 = a * a * a * out.c * out.c * b / (2.0 * e * (a - b));
    out.b4 = a * a * a * out.c * out.c / (e * (a - b));
    out.b5 = 1.0 / n;
    out.total = out.b1 + out.b2 + out.b3 + out.b4 + out.b5;
    out.theorem_regime_ok = thm1_regime_ok(n, a, b);
    out.proof_conditions_ok = a < n / std::log(static_cast<double>(n)) &&
                              std::pow(static_cast<double>(a), 1.5) * out.c < 1.0;
    return out;
}

/// Smallest t >= 1 with (gamma + t) mod a outside the set; the replacement
/// that keeps all b colors distinct.
inline int next_available_color(const ColorSet& cs, int gamma) {
    if (gamma < 0 || gamma >= cs.palette_size || !cs.contains(gamma))
        throw InvalidParams("next_available_color: gamma not in color set");
    if (cs.cardinality() == cs.palette_size)
        throw FullPalette("next_available_color: all colors present");
    const int a = cs.palette_size;
    for (int t = 1; t < a; ++t) {
        int candidate = (gamma + t) % a;
        if (!cs.contains(candidate)) return candidate;
    }
    throw FullPalette("next_available_color: all colors present");
}

struct SolverParams {
    int a = 0;
    int b = 0;
    std::uint64_t seed = 0;
    std::optional<double> p_override;  // defaults to threshold_p(n)
};

struct RecolorEvent {
    int vertex;
    int removed_color;
    int added_color;
    int triggering_edge;  // lowest-index initially monochromatic edge in removed_color
    double weight;

    friend bool operator==(const RecolorEvent& x, const RecolorEvent& y) {
        return x.vertex == y.vertex && x.removed_color == y.removed_color &&
               x.added_color == y.added_color && x.triggering_edge == y.triggering_edge &&
               x.weight == y.weight;
    }
};

struct B1Witness {
    int edge;
    int color;
};
struct B2Witness {
    int edge;
    int color_a;
    int color_b;
};
struct B3Witness {
    int vertex;
    int edge_a;
    int edge_b;
    int color_a;
    int color_b;
};
struct B45Witness {
    int edge;              // the edge that ends monochromatic (A)
    int triggering_edge;   // the edge that triggered the last recoloring (B)
    int vertex;            // last vertex recolored to color_a
    int color_a;           // final monochromatic color
    int color_b;           // color removed at that vertex
    int overlap_k;         // |A intersect B|
    int offset_t;          // (color_a - color_b) mod a
};

struct BadEventReport {
    std::vector<B1Witness> b1;
    std::vector<B2Witness> b2;
    std::vector<B3Witness> b3;
    std::vector<B45Witness> b4;
    std::vector<B45Witness> b5;

    bool any() const {
        return !(b1.empty() && b2.empty() && b3.empty() && b4.empty() && b5.empty());
    }
};

enum class SolveStatus { proper, failed };

struct SolveOutcome {
    SolverParams params;
    double p = 0.0;
    FractionalColoring initial;
    std::vector<double> weights;
    std::vector<RecolorEvent> events;
    FractionalColoring final;
    SolveStatus status = SolveStatus::proper;
    BadEventReport report;

    friend bool operator==(const SolveOutcome& x, const SolveOutcome& y) {
        return x.p == y.p && x.initial == y.initial && x.weights == y.weights &&
               x.events == y.events && x.final == y.final && x.status == y.status;
    }
};

/**
 * Classifies an outcome into the B1-B5 event classes with concrete witnesses.
 * B1-B3 are properties of the initial data and are scanned on every outcome,
 * so Monte Carlo runs can estimate each P(Bi) independently of failure.
 * B4/B5 witnesses exist only when an edge not initially monochromatic in some
 * color ends monochromatic in it.
 */
inline BadEventReport classify_failure(const Hypergraph& h, const SolveOutcome& outcome) {
    BadEventReport report;
    const auto& chi0 = outcome.initial;
    const double p = outcome.p;
    const std::uint64_t palette = full_mask(chi0.a);

    std::vector<std::uint64_t> initial_common(h.edges.size());
    for (std::size_t e = 0; e < h.edges.size(); ++e)
        initial_common[e] = edge_common_mask(chi0, h.edges[e]) & palette;

    // B1: initially monochromatic edge with every vertex heavy
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        std::uint64_t common = initial_common[e];
        if (!common) continue;
        bool all_heavy = true;
        for (int v : h.edges[e]) {
            if (outcome.weights[v] < p) {
                all_heavy = false;
                break;
            }
        }
        if (all_heavy) {
            while (common) {
                report.b1.push_back({static_cast<int>(e), std::countr_zero(common)});
                common &= common - 1;
            }
        }
    }

    // B2: edge initially monochromatic in two distinct colors
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        if (std::popcount(initial_common[e]) >= 2) {
            int first = std::countr_zero(initial_common[e]);
            int second = std::countr_zero(initial_common[e] & (initial_common[e] - 1));
            report.b2.push_back({static_cast<int>(e), first, second});
        }
    }

    // B3: light vertex in two initially monochromatic edges of distinct colors
    {
        std::vector<std::vector<MonoPair>> by_vertex(h.vertex_count);
        for (std::size_t e = 0; e < h.edges.size(); ++e) {
            std::uint64_t common = initial_common[e];
            while (common) {
                int c = std::countr_zero(common);
                common &= common - 1;
                for (int v : h.edges[e]) by_vertex[v].push_back({static_cast<int>(e), c});
            }
        }
        for (int v = 0; v < h.vertex_count; ++v) {
            if (outcome.weights[v] >= p || by_vertex[v].size() < 2) continue;
            const auto& pairs = by_vertex[v];
            bool found = false;
            for (std::size_t i = 0; i < pairs.size() && !found; ++i) {
                for (std::size_t j = i + 1; j < pairs.size() && !found; ++j) {
                    if (pairs[i].color != pairs[j].color && pairs[i].edge != pairs[j].edge) {
                        report.b3.push_back(
                            {v, pairs[i].edge, pairs[j].edge, pairs[i].color, pairs[j].color});
                        found = true;
                    }
                }
            }
        }
    }

    // B4/B5: edges that *became* monochromatic; attribute to the last
    // recoloring event that introduced the final common color
    {
        std::vector<int> event_at(h.vertex_count, -1);
        for (std::size_t i = 0; i < outcome.events.size(); ++i)
            event_at[outcome.events[i].vertex] = static_cast<int>(i);
        for (std::size_t e = 0; e < h.edges.size(); ++e) {
            std::uint64_t common = edge_common_mask(outcome.final, h.edges[e]) & palette;
            std::uint64_t fresh = common & ~initial_common[e];
            while (fresh) {
                int gamma = std::countr_zero(fresh);
                fresh &= fresh - 1;
                // events are appended in processing order (ascending weight),
                // so the highest event index is the last recoloring
                int last_event = -1;
                for (int v : h.edges[e]) {
                    int idx = event_at[v];
                    if (idx >= 0 && outcome.events[idx].added_color == gamma)
                        last_event = std::max(last_event, idx);
                }
                if (last_event < 0)
                    throw Error("classify_failure: no event explains a fresh monochromatic color");
                const auto& ev = outcome.events[last_event];
                const auto& trigger = h.edges[ev.triggering_edge];
                int overlap = 0;
                {
                    std::size_t i = 0, j = 0;
                    const auto& edge_a = h.edges[e];
                    while (i < edge_a.size() && j < trigger.size()) {
                        if (edge_a[i] == trigger[j]) ++overlap, ++i, ++j;
                        else if (edge_a[i] < trigger[j]) ++i;
                        else ++j;
                    }
                }
                int offset = ((gamma - ev.removed_color) % chi0.a + chi0.a) % chi0.a;
                B45Witness w{static_cast<int>(e), ev.triggering_edge, ev.vertex,
                             gamma,              ev.removed_color,    overlap,
                             offset};
                if (ev.triggering_edge == static_cast<int>(e)) report.b5.push_back(w);
                else report.b4.push_back(w);
            }
        }
    }
    return report;
}

/// Runs the randomized recoloring algorithm; a pure function of (h, params).
/// Random draws are consumed in a fixed order: per-vertex color sets, then
/// per-vertex weights, then triggering-color choices in processing order.
inline SolveOutcome solve_theorem1(const Hypergraph& h, const SolverParams& params) {
    const int n = h.uniformity;
    if (n < 3) throw InvalidParams("solve_theorem1 requires uniformity >= 3");
    if (params.a < 2 || params.a > kMaxPalette || params.b < 1 || params.b >= params.a)
        throw InvalidParams("solve_theorem1 requires 1 <= b < a <= 64");
    const double p = params.p_override ? *params.p_override : threshold_p(n);
    if (!(p > 0.0 && p < 1.0)) throw InvalidParams("solve_theorem1 requires 0 < p < 1");

    SolveOutcome out;
    out.params = params;
    out.p = p;

    Rng rng(params.seed);
    out.initial = random_fractional_coloring(h.vertex_count, params.a, params.b, rng);
    out.weights.reserve(h.vertex_count);
    for (int v = 0; v < h.vertex_count; ++v) out.weights.push_back(rng.uniform01());

    // initially monochromatic pairs and per-vertex triggering data
    const std::uint64_t palette = full_mask(params.a);
    std::vector<std::uint64_t> trigger_mask(h.vertex_count, 0);
    std::unordered_map<std::uint64_t, int> trigger_edge;  // (v * 64 + color) -> edge
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        std::uint64_t common = edge_common_mask(out.initial, h.edges[e]) & palette;
        std::uint64_t rest = common;
        while (rest) {
            int c = std::countr_zero(rest);
            rest &= rest - 1;
            for (int v : h.edges[e]) {
                std::uint64_t key = static_cast<std::uint64_t>(v) * 64 + c;
                if (!(trigger_mask[v] >> c & 1)) {
                    trigger_mask[v] |= 1ULL << c;
                    trigger_edge.emplace(key, static_cast<int>(e));
                }
            }
        }
    }

    // light vertices with at least one trigger, in ascending (weight, id) order
    std::vector<int> to_process;
    for (int v = 0; v < h.vertex_count; ++v)
        if (trigger_mask[v] != 0 && out.weights[v] < p) to_process.push_back(v);
    std::sort(to_process.begin(), to_process.end(), [&](int x, int y) {
        if (out.weights[x] != out.weights[y]) return out.weights[x] < out.weights[y];
        return x < y;
    });

    out.final = out.initial;
    for (int v : to_process) {
        const int count = std::popcount(trigger_mask[v]);
        int pick = count == 1 ? 0 : static_cast<int>(rng.below(count));
        std::uint64_t rest = trigger_mask[v];
        while (pick-- > 0) rest &= rest - 1;
        const int gamma = std::countr_zero(rest);
        const int added = next_available_color(out.initial.color_set(v), gamma);
        out.final.sets[v] = (out.final.sets[v] & ~(1ULL << gamma)) | (1ULL << added);
        out.events.push_back(
            {v, gamma, added, trigger_edge.at(static_cast<std::uint64_t>(v) * 64 + gamma),
             out.weights[v]});
    }

    out.status = is_proper(h, out.final) ? SolveStatus::proper : SolveStatus::failed;
    out.report = classify_failure(h, out);
    return out;
}

}  // namespace frachyp
