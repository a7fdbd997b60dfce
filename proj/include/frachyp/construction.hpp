#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "frachyp/bigint.hpp"
#include "frachyp/coloring.hpp"
#include "frachyp/errors.hpp"
#include "frachyp/exact.hpp"
#include "frachyp/hypergraph.hpp"
#include "frachyp/rational.hpp"
#include "frachyp/rng.hpp"

namespace frachyp {

/**
 * Probabilistic construction of non-(a:b)-colorable n-uniform hypergraphs:
 * sample m uniform n-sets on v vertices; a union bound over all C(a,b)^v
 * colorings shows some sample admits no proper coloring once
 * C(a,b)^v (1-p)^m < 1, where p lower-bounds the per-edge failure probability
 * of any fixed coloring.  All probabilities here are exact rationals.
 */

/// s_t^x sums for a fixed coloring and color x: over all t-subsets y of the
/// palette containing x, the number of n-sets inside S_y = {vertices whose
/// color set contains all of y}.
struct SSumTable {
    int color_x = 0;
    int b = 0;
    std::vector<BigInt> s;  // s[t-1] = s_t^x, t = 1..b

    const BigInt& s_t(int t) const { return s.at(t - 1); }
};

inline SSumTable s_sums(const FractionalColoring& chi, int x, int v, int n) {
    if (x < 0 || x >= chi.a) throw InvalidParams("s_sums: color out of palette");
    if (chi.vertex_count() != v) throw InvalidParams("s_sums: v disagrees with coloring");
    if (n < 1) throw InvalidParams("s_sums: n must be >= 1");
    SSumTable table;
    table.color_x = x;
    table.b = chi.b;
    table.s.assign(chi.b, BigInt(0));

    // enumerate (t-1)-subsets of the palette minus x, add x, count containment
    std::vector<int> others;
    for (int c = 0; c < chi.a; ++c)
        if (c != x) others.push_back(c);
    const std::uint64_t x_bit = 1ULL << x;

    for (int t = 1; t <= chi.b; ++t) {
        const int pick = t - 1;
        std::vector<int> idx(pick);
        for (int i = 0; i < pick; ++i) idx[i] = i;
        BigInt sum = 0;
        for (;;) {
            std::uint64_t y = x_bit;
            for (int i : idx) y |= 1ULL << others[static_cast<std::size_t>(i)];
            long long in_sy = 0;
            for (std::uint64_t m : chi.sets)
                if ((m & y) == y) ++in_sy;
            sum = sum + BigInt::binomial(static_cast<std::uint64_t>(in_sy),
                                         static_cast<std::uint64_t>(n));
            if (pick == 0) break;
            int i = pick - 1;
            while (i >= 0 && idx[i] == static_cast<int>(others.size()) - pick + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < pick; ++j) idx[j] = idx[j - 1] + 1;
        }
        table.s[t - 1] = sum;
    }
    return table;
}

/// Exact check of sum_{i=1}^{b} (-1)^(i+1) s_i/i >= s_1/b.  The telescoping
/// argument says this always holds; a false return means a bug (or a
/// counterexample worth a close look).
inline bool telescoping_check(const SSumTable& table, int b) {
    if (b != table.b || b < 1) throw InvalidParams("telescoping_check: b mismatch");
    Rational lhs(0);
    for (int i = 1; i <= b; ++i) {
        Rational term(table.s_t(i), BigInt(i));
        lhs += (i % 2 == 1) ? term : -term;
    }
    return lhs >= Rational(table.s_t(1), BigInt(b));
}

/// The stepping-stone inequality s_1 >= s_j - s_{j+1} + ... +- s_b for every j.
inline bool counting_inequality_check(const SSumTable& table) {
    for (int j = 1; j <= table.b; ++j) {
        BigInt rhs = 0;
        for (int i = j; i <= table.b; ++i) {
            if ((i - j) % 2 == 0) rhs = rhs + table.s_t(i);
            else rhs = rhs - table.s_t(i);
        }
        if (table.s_t(1) < rhs) return false;
    }
    return true;
}

/// Exact P(uniform n-set is monochromatic under chi) via inclusion-exclusion:
/// sum_{i=1}^{b} (-1)^(i+1) sum_{|y|=i} C(|S_y|, n) / C(v, n).
inline Rational bad_prob_inclusion_exclusion(const FractionalColoring& chi, int v, int n) {
    if (chi.vertex_count() != v) throw InvalidParams("bad_prob: v disagrees with coloring");
    if (n < 1 || v < n) throw InvalidParams("bad_prob: need v >= n >= 1");
    if (chi.a > 30) throw BudgetExceeded("bad_prob: palette too large to enumerate subsets");
    BigInt numerator = 0;
    for (int i = 1; i <= chi.b; ++i) {
        std::vector<int> idx(i);
        for (int j = 0; j < i; ++j) idx[j] = j;
        for (;;) {
            std::uint64_t y = 0;
            for (int j : idx) y |= 1ULL << j;
            long long in_sy = 0;
            for (std::uint64_t m : chi.sets)
                if ((m & y) == y) ++in_sy;
            BigInt count = BigInt::binomial(static_cast<std::uint64_t>(in_sy),
                                            static_cast<std::uint64_t>(n));
            numerator = (i % 2 == 1) ? numerator + count : numerator - count;
            int j = i - 1;
            while (j >= 0 && idx[j] == chi.a - i + j) --j;
            if (j < 0) break;
            ++idx[j];
            for (int k = j + 1; k < i; ++k) idx[k] = idx[k - 1] + 1;
        }
    }
    return Rational(numerator, BigInt::binomial(static_cast<std::uint64_t>(v),
                                                static_cast<std::uint64_t>(n)));
}

/// Convexity lower bound p = a C(bv/a, n) / (b C(v, n)); requires a | bv.
inline Rational bad_prob_lower_p(long long v, int n, int a, int b) {
    if (a < 1 || b < 1 || b > a || n < 1 || v < 1) throw InvalidParams("bad_prob_lower_p");
    if ((static_cast<long long>(b) * v) % a != 0)
        throw DivisibilityError("bad_prob_lower_p requires a | bv");
    const long long balanced = static_cast<long long>(b) * v / a;
    return Rational(BigInt(a) * BigInt::binomial(static_cast<std::uint64_t>(balanced),
                                                 static_cast<std::uint64_t>(n)),
                    BigInt(b) * BigInt::binomial(static_cast<std::uint64_t>(v),
                                                 static_cast<std::uint64_t>(n)));
}

struct UnionBoundCertificate {
    Rational p;                        // exact lower bound on the bad probability
    long long v = 0;
    long long m = 0;
    double log_value = 0.0;            // ln( C(a,b)^v (1-p)^m )
    std::optional<bool> exact_lt_one;  // exact verdict when small enough to expand
};

/// Evaluates C(a,b)^v (1-p)^m < 1, exactly when the numbers stay manageable
/// and in the log domain otherwise.
inline UnionBoundCertificate union_bound_certificate(long long v, int n, int a, int b,
                                                     long long m) {
    UnionBoundCertificate cert;
    cert.v = v;
    cert.m = m;
    cert.p = bad_prob_lower_p(v, n, a, b);
    const BigInt choices = BigInt::binomial(static_cast<std::uint64_t>(a),
                                            static_cast<std::uint64_t>(b));
    const Rational one_minus_p = Rational(1) - cert.p;
    if (one_minus_p.sign() == 0) {
        cert.log_value = -std::numeric_limits<double>::infinity();
        cert.exact_lt_one = m >= 1;
        if (m == 0) cert.exact_lt_one = BigInt::pow(choices, v) < BigInt(1);
        return cert;
    }
    cert.log_value = static_cast<double>(v) * choices.log_value() +
                     static_cast<double>(m) * one_minus_p.log_value();
    const double bits = static_cast<double>(m) * one_minus_p.den().bit_length() +
                        static_cast<double>(v) * choices.bit_length();
    if (bits <= 40000) {
        // C^v (1-p)^m < 1  <=>  C^v (den-num)^m < den^m
        BigInt lhs = BigInt::pow(choices, static_cast<std::uint64_t>(v)) *
                     BigInt::pow(one_minus_p.num(), static_cast<std::uint64_t>(m));
        BigInt rhs = BigInt::pow(one_minus_p.den(), static_cast<std::uint64_t>(m));
        cert.exact_lt_one = lhs < rhs;
    }
    return cert;
}

/// m = ceil(b v ln(ae/b) / p); the smallest edge count the union-bound chain
/// certifies.  Natural log, as everywhere in this toolkit.
inline long long edge_count_m(long long v, int n, int a, int b) {
    Rational p = bad_prob_lower_p(v, n, a, b);
    if (p.sign() == 0) throw InvalidParams("edge_count_m: p = 0 (v too small, bv/a < n)");
    const double target = static_cast<double>(b) * static_cast<double>(v) *
                          (std::log(static_cast<double>(a) / b) + 1.0);
    return static_cast<long long>(std::ceil(target / p.to_double()));
}

/// Vertex count an^2/(2b), rounded half-up then bumped until a | bv.
inline long long optimal_v(int n, int a, int b) {
    if (a < 1 || b < 1 || n < 1) throw InvalidParams("optimal_v");
    long long v = (static_cast<long long>(a) * n * n + b) / (2LL * b);
    if (v < n) v = n;
    while ((static_cast<long long>(b) * v) % a != 0) ++v;
    return v;
}

/// Edge count from the headline statement: (e/2) n^2 (a/b)^n b (ln(a/b) + 1).
inline double thm2_edge_total(int n, int a, int b) {
    if (!(a > b && b >= 1)) throw InvalidParams("thm2_edge_total requires a > b >= 1");
    const double ratio = static_cast<double>(a) / b;
    return 0.5 * std::numbers::e * n * n * std::pow(ratio, n) * b * (std::log(ratio) + 1.0);
}

struct PApproxReport {
    Rational exact;
    double approx;     // (a/b)(b/a)^n exp(-a n^2 / (2 b v))
    double rel_error;  // |approx - exact| / exact
};

/// Diagnostic only: the second-order approximation of p against the exact
/// value.  No correctness contract; the gap closes as v grows past n^(3/2).
inline PApproxReport compare_p_approximation(long long v, int n, int a, int b) {
    PApproxReport rep;
    rep.exact = bad_prob_lower_p(v, n, a, b);
    rep.approx = (static_cast<double>(a) / b) *
                 std::pow(static_cast<double>(b) / a, n) *
                 std::exp(-static_cast<double>(a) * n * n / (2.0 * b * static_cast<double>(v)));
    const double exact_d = rep.exact.to_double();
    rep.rel_error = exact_d > 0 ? std::abs(rep.approx - exact_d) / exact_d : 0.0;
    return rep;
}

struct ConstructionParams {
    int n = 0;
    int a = 0;
    int b = 0;
    long long v = -1;  // defaults to optimal_v(n, a, b)
    long long m = -1;  // defaults to edge_count_m(v, n, a, b)
    std::uint64_t seed = 0;
    int max_attempts = 100;
};

struct ConstructResult {
    Hypergraph hypergraph;
    bool certified = false;              // brute force found no proper coloring
    bool certification_feasible = true;  // C(a,b)^v within the budget
    int attempts = 1;
    UnionBoundCertificate certificate;
};

/**
 * Samples m independent uniform n-sets on v vertices and certifies
 * non-(a:b)-colorability by exhaustive search.  With retry set, fresh samples
 * are drawn until one certifies (existence is probabilistic, not per-sample).
 */
inline ConstructResult sample_and_certify(const ConstructionParams& params, bool retry,
                                          std::uint64_t budget = enumeration_budget()) {
    if (params.n < 1 || params.a < 1 || params.b < 1 || params.b >= params.a ||
        params.a > kMaxPalette)
        throw InvalidParams("sample_and_certify requires 1 <= b < a <= 64, n >= 1");
    const long long v = params.v > 0 ? params.v : optimal_v(params.n, params.a, params.b);
    if (v < params.n) throw InvalidParams("sample_and_certify: v < n");
    if ((static_cast<long long>(params.b) * v) % params.a != 0)
        throw DivisibilityError("sample_and_certify requires a | bv");
    const long long m = params.m >= 0 ? params.m : edge_count_m(v, params.n, params.a, params.b);

    ConstructResult result;
    result.certificate = union_bound_certificate(v, params.n, params.a, params.b, m);
    const auto masks = all_color_masks(params.a, params.b);
    const bool feasible =
        !detail::assignment_space_exceeds(masks.size(), static_cast<int>(v), budget);
    result.certification_feasible = feasible;

    Rng rng(params.seed);
    SubsetSampler sampler(static_cast<int>(v));
    const int attempts_allowed = retry ? params.max_attempts : 1;
    std::vector<int> edge;
    for (int attempt = 1; attempt <= attempts_allowed; ++attempt) {
        std::vector<std::vector<int>> edges;
        edges.reserve(static_cast<std::size_t>(m));
        for (long long i = 0; i < m; ++i) {
            sampler.sample(params.n, rng, edge);
            edges.push_back(edge);
        }
        result.hypergraph =
            make_hypergraph(static_cast<int>(v), params.n, std::move(edges));
        result.attempts = attempt;
        if (m == 0 || !feasible) {
            result.certified = false;
            return result;
        }
        result.certified = !brute_force_colorable(result.hypergraph, params.a, params.b, budget);
        if (result.certified || !retry) return result;
    }
    throw AttemptsExhausted("sample_and_certify: no certified sample within the attempt budget");
}

}  // namespace frachyp
