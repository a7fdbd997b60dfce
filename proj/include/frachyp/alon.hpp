#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "frachyp/coloring.hpp"
#include "frachyp/errors.hpp"
#include "frachyp/hypergraph.hpp"
#include "frachyp/rational.hpp"
#include "frachyp/rng.hpp"

namespace frachyp {

/**
 * Reserve-color solver for the regime n <= a/b < n^(n-1): color with
 * a' = floor(a(n-1)/n) working colors, then repair each monochromatic edge by
 * swapping the offending colors at one vertex for reserved colors, every
 * reserve color used on at most n-1 vertices so it can never cover an n-edge.
 */

/// a' = floor(a(n-1)/n); the reserve has a - a' = ceil(a/n) colors.
inline int a_prime(int a, int n) {
    if (a < 1 || n < 2) throw InvalidParams("a_prime requires a >= 1, n >= 2");
    return static_cast<int>(static_cast<long long>(a) * (n - 1) / n);
}

struct AlonPrecondition {
    int working_colors;   // a'
    int reserve_colors;   // a - a'
    double edge_budget;   // e^(-1) (a'/b)^n
    bool ratio_window;    // n <= a/b < n^(n-1)
    bool edge_budget_ok;  // |E| <= edge_budget
    bool proof_condition_ok;  // a' (b/(a'-b+1))^n <= 1
    bool reserve_ge_b;        // a - a' >= b

    bool all() const {
        return ratio_window && edge_budget_ok && proof_condition_ok && reserve_ge_b;
    }
};

inline AlonPrecondition precondition_alon(const Hypergraph& h, int a, int b) {
    const int n = h.uniformity;
    if (a < 1 || b < 1 || b > a || n < 2)
        throw InvalidParams("precondition_alon requires 1 <= b <= a and uniformity >= 2");
    AlonPrecondition pre;
    pre.working_colors = a_prime(a, n);
    pre.reserve_colors = a - pre.working_colors;

    // n <= a/b: exact.  a/b < n^(n-1): exact in 64 bits when possible.
    bool lower = static_cast<long long>(b) * n <= a;
    bool upper;
    if ((n - 1) * std::log2(static_cast<double>(n)) < 62) {
        long long power = 1;
        for (int i = 0; i < n - 1; ++i) power *= n;
        upper = a < static_cast<long long>(b) * power;
    } else {
        upper = std::log(static_cast<double>(a)) - std::log(static_cast<double>(b)) <
                (n - 1) * std::log(static_cast<double>(n));
    }
    pre.ratio_window = lower && upper;

    const int ap = pre.working_colors;
    pre.edge_budget = ap >= b ? std::exp(-1.0) * std::pow(static_cast<double>(ap) / b, n) : 0.0;
    pre.edge_budget_ok = static_cast<double>(h.edge_count()) <= pre.edge_budget;
    pre.proof_condition_ok =
        ap >= b && ap * std::pow(static_cast<double>(b) / (ap - b + 1), n) <= 1.0;
    pre.reserve_ge_b = pre.reserve_colors >= b;
    return pre;
}

/// m * sum_{k=1}^{b} k C(a',k) (C(a'-k, b-k)/C(a',b))^n, the expected number
/// of color replacements; at most a' whenever the preconditions hold.
inline double expected_recolorings_bound(int working_colors, int b, int n, long long m) {
    if (b < 1 || working_colors < b || n < 1 || m < 0)
        throw InvalidParams("expected_recolorings_bound: bad parameters");
    Rational total(0);
    const BigInt denom = BigInt::binomial(working_colors, b);
    for (int k = 1; k <= b; ++k) {
        Rational ratio(BigInt::binomial(working_colors - k, b - k), denom);
        Rational term = Rational(k) * Rational(BigInt::binomial(working_colors, k), BigInt(1)) *
                        Rational::pow(ratio, static_cast<std::uint64_t>(n));
        total += term;
    }
    return static_cast<double>(m) * total.to_double();
}

struct AlonParams {
    int a = 0;
    int b = 0;
    std::uint64_t seed = 0;
    int max_attempts = 50;
};

struct RepairEvent {
    int vertex;
    int edge;
    int removed_color;
    int added_color;  // always a reserve color (>= a')
};

struct RepairLedger {
    int working_colors = 0;               // a'
    std::vector<int> reserve_use;         // per reserve color, <= n-1 vertices
    std::vector<RepairEvent> events;
    int attempts = 1;
};

struct AlonOutcome {
    FractionalColoring coloring;
    RepairLedger ledger;
};

/**
 * Runs the reserve-color procedure.  Restarts with a fresh random coloring
 * when the reserve capacity (n-1 uses per color) would be exceeded; throws
 * AttemptsExhausted after max_attempts restarts.  The returned coloring is
 * always proper.
 */
inline AlonOutcome solve_alon(const Hypergraph& h, const AlonParams& params) {
    const int n = h.uniformity;
    if (n < 2) throw InvalidParams("solve_alon requires uniformity >= 2");
    if (params.a < 1 || params.a > kMaxPalette || params.b < 1 || params.b > params.a)
        throw InvalidParams("solve_alon requires 1 <= b <= a <= 64");
    if (params.max_attempts < 1) throw InvalidParams("solve_alon requires max_attempts >= 1");
    const int ap = a_prime(params.a, n);
    if (ap < params.b) throw InvalidParams("solve_alon: a' < b, no working coloring exists");
    const int reserve = params.a - ap;
    const int capacity = n - 1;

    Rng rng(params.seed);
    for (int attempt = 1; attempt <= params.max_attempts; ++attempt) {
        FractionalColoring chi{params.a, params.b, {}};
        chi.sets.reserve(h.vertex_count);
        for (int v = 0; v < h.vertex_count; ++v)
            chi.sets.push_back(random_color_mask(ap, params.b, rng));

        RepairLedger ledger;
        ledger.working_colors = ap;
        ledger.reserve_use.assign(reserve, 0);
        ledger.attempts = attempt;

        // monochromatic (edge, color) pairs of the initial coloring; repairs
        // only remove working colors, so no new working pair can appear
        std::vector<std::uint64_t> initial_common(h.edges.size());
        const std::uint64_t working_palette = full_mask(ap);
        for (std::size_t e = 0; e < h.edges.size(); ++e)
            initial_common[e] = edge_common_mask(chi, h.edges[e]) & working_palette;

        bool overflow = false;
        for (std::size_t e = 0; e < h.edges.size() && !overflow; ++e) {
            std::uint64_t colors = initial_common[e];
            while (colors && !overflow) {
                const int gamma = std::countr_zero(colors);
                colors &= colors - 1;
                std::uint64_t still = ~0ULL;
                for (int v : h.edges[e]) still &= chi.sets[v];
                if (!((still >> gamma) & 1)) continue;  // repaired via an earlier edge
                const int v = h.edges[e].front();
                int chosen = -1;
                for (int r = 0; r < reserve; ++r) {
                    if (ledger.reserve_use[r] < capacity && !((chi.sets[v] >> (ap + r)) & 1)) {
                        chosen = r;
                        break;
                    }
                }
                if (chosen < 0) {
                    overflow = true;
                    break;
                }
                chi.sets[v] = (chi.sets[v] & ~(1ULL << gamma)) | (1ULL << (ap + chosen));
                ++ledger.reserve_use[chosen];
                ledger.events.push_back({v, static_cast<int>(e), gamma, ap + chosen});
            }
        }
        if (overflow) continue;
        if (!is_proper(h, chi)) throw Error("solve_alon: repaired coloring is not proper");
        return {std::move(chi), std::move(ledger)};
    }
    throw AttemptsExhausted("solve_alon: reserve capacity exceeded in every attempt");
}

}  // namespace frachyp
