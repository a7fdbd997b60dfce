#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "frachyp/bigint.hpp"
#include "frachyp/errors.hpp"
#include "frachyp/rng.hpp"

namespace frachyp {

/**
 * n-uniform hypergraph on dense 0-based vertex ids.
 *
 * Edges are stored with vertices sorted ascending; duplicate edges are legal
 * (the random sampler draws with replacement) and are only flagged, never
 * rejected.  Values are immutable once built: construct through
 * make_hypergraph or a generator, then share freely across threads.
 */
struct Hypergraph {
    int vertex_count = 0;
    int uniformity = 1;
    std::vector<std::vector<int>> edges;

    std::size_t edge_count() const { return edges.size(); }
};

inline Hypergraph make_hypergraph(int vertex_count, int uniformity,
                                  std::vector<std::vector<int>> edges) {
    if (uniformity < 1) throw InvalidParams("uniformity must be >= 1");
    if (vertex_count < 0) throw InvalidParams("vertex_count must be >= 0");
    if (!edges.empty() && vertex_count < uniformity)
        throw InvalidParams("vertex_count < uniformity with nonempty edge list");
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw EdgeSizeMismatch("edge has repeated vertex");
        if (static_cast<int>(e.size()) != uniformity)
            throw EdgeSizeMismatch("edge has " + std::to_string(e.size()) +
                                   " vertices, expected " + std::to_string(uniformity));
        if (e.front() < 0 || e.back() >= vertex_count)
            throw VertexOutOfRange("vertex id outside [0, " + std::to_string(vertex_count) + ")");
    }
    return Hypergraph{vertex_count, uniformity, std::move(edges)};
}

inline bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.vertex_count == b.vertex_count && a.uniformity == b.uniformity && a.edges == b.edges;
}

/// Copy with edges sorted lexicographically (duplicates kept adjacent).
inline Hypergraph canonicalize(const Hypergraph& h) {
    Hypergraph c = h;
    std::sort(c.edges.begin(), c.edges.end());
    return c;
}

/// Indices of edges equal to an earlier edge (validation flag, not an error).
inline std::vector<int> duplicate_edges(const Hypergraph& h) {
    std::vector<int> dups;
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
        if (!seen.insert(h.edges[i]).second) dups.push_back(static_cast<int>(i));
    }
    return dups;
}

/// Per-vertex list of incident edge indices.
inline std::vector<std::vector<int>> incidence_lists(const Hypergraph& h) {
    std::vector<std::vector<int>> inc(h.vertex_count);
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
        for (int v : h.edges[i]) inc[v].push_back(static_cast<int>(i));
    }
    return inc;
}

// ---------------------------------------------------------------------------
// text format: "v n m" header, then m lines of n vertex ids, '#' comments
// ---------------------------------------------------------------------------

inline std::string serialize_hypergraph(const Hypergraph& h) {
    Hypergraph c = canonicalize(h);
    std::ostringstream out;
    out << c.vertex_count << ' ' << c.uniformity << ' ' << c.edges.size() << '\n';
    for (const auto& e : c.edges) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
    return out.str();
}

inline Hypergraph parse_hypergraph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line[0] == '#') continue;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string header;
    if (!next_line(header)) throw ParseError(line_no, "missing header line");
    std::istringstream hs(header);
    long long v = 0, n = 0, m = 0;
    std::string extra;
    if (!(hs >> v >> n >> m)) throw ParseError(line_no, "header must be \"v n m\"");
    if (hs >> extra) throw ParseError(line_no, "trailing tokens after header");
    if (v < 0 || n < 1 || m < 0) throw ParseError(line_no, "header values out of range");

    std::vector<std::vector<int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        std::string row;
        if (!next_line(row)) throw ParseError(line_no, "expected " + std::to_string(m) +
                                                           " edges, file ended early");
        std::istringstream rs(row);
        std::vector<int> edge;
        long long id;
        while (rs >> id) {
            if (id < 0 || id >= v) throw ParseError(line_no, "vertex id out of range");
            edge.push_back(static_cast<int>(id));
        }
        if (!rs.eof()) throw ParseError(line_no, "non-integer token in edge");
        if (static_cast<long long>(edge.size()) != n)
            throw ParseError(line_no, "edge has " + std::to_string(edge.size()) +
                                          " vertices, expected " + std::to_string(n));
        edges.push_back(std::move(edge));
    }
    std::string tail;
    if (next_line(tail)) throw ParseError(line_no, "unexpected content after last edge");
    try {
        return make_hypergraph(static_cast<int>(v), static_cast<int>(n), std::move(edges));
    } catch (const Error& e) {
        throw ParseError(line_no, e.what());
    }
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

/// All C(v, n) n-subsets as edges, lexicographic order.
inline Hypergraph gen_complete_uniform(int v, int n) {
    if (n < 1 || v < n) throw InvalidParams("gen_complete_uniform requires v >= n >= 1");
    std::vector<std::vector<int>> edges;
    std::vector<int> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = i;
    for (;;) {
        edges.push_back(cur);
        int i = n - 1;
        while (i >= 0 && cur[i] == v - n + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < n; ++j) cur[j] = cur[j - 1] + 1;
    }
    return make_hypergraph(v, n, std::move(edges));
}

/// 2-uniform cycle 0-1-2-...-v-1-0.
inline Hypergraph gen_cycle(int v) {
    if (v < 3) throw InvalidParams("gen_cycle requires v >= 3");
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < v; ++i) edges.push_back({i, (i + 1) % v});
    return make_hypergraph(v, 2, std::move(edges));
}

/// m edges drawn uniformly and independently from all n-subsets of [v].
/// With distinct set, rejection-samples until the edges are pairwise distinct.
inline Hypergraph gen_random_uniform(int v, int n, long long m, std::uint64_t seed,
                                     bool distinct = false) {
    if (n < 1 || v < n || m < 0) throw InvalidParams("gen_random_uniform: need v >= n >= 1, m >= 0");
    if (distinct && BigInt(m) > BigInt::binomial(v, n))
        throw InvalidParams("gen_random_uniform: m exceeds C(v, n) with distinct set");
    Rng rng(seed);
    SubsetSampler sampler(v);
    std::vector<std::vector<int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::set<std::vector<int>> seen;
    std::vector<int> edge;
    while (static_cast<long long>(edges.size()) < m) {
        sampler.sample(n, rng, edge);
        if (distinct && !seen.insert(edge).second) continue;
        edges.push_back(edge);
    }
    return make_hypergraph(v, n, std::move(edges));
}

}  // namespace frachyp
