#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "frachyp/errors.hpp"
#include "frachyp/hypergraph.hpp"
#include "frachyp/rng.hpp"

namespace frachyp {

/// Palettes are capped at 64 colors so a color set fits in one machine word.
inline constexpr int kMaxPalette = 64;

inline std::uint64_t full_mask(int a) {
    return a == 64 ? ~0ULL : ((1ULL << a) - 1);
}

/// b-subset of the palette {0,...,a-1}, stored as a bit mask.
struct ColorSet {
    int palette_size = 0;
    std::uint64_t mask = 0;

    bool contains(int color) const { return (mask >> color) & 1; }
    int cardinality() const { return std::popcount(mask); }

    std::vector<int> colors() const {
        std::vector<int> out;
        for (int c = 0; c < palette_size; ++c)
            if (contains(c)) out.push_back(c);
        return out;
    }
};

inline ColorSet make_color_set(int a, const std::vector<int>& members) {
    if (a < 1 || a > kMaxPalette) throw InvalidParams("palette size must be in [1, 64]");
    ColorSet cs{a, 0};
    for (int c : members) {
        if (c < 0 || c >= a) throw InvalidParams("color out of palette range");
        if (cs.contains(c)) throw InvalidParams("repeated color in color set");
        cs.mask |= 1ULL << c;
    }
    return cs;
}

/// (a:b)-fractional coloring: one b-subset of {0,...,a-1} per vertex.
struct FractionalColoring {
    int a = 0;
    int b = 0;
    std::vector<std::uint64_t> sets;  // sets[v] = color mask of vertex v

    int vertex_count() const { return static_cast<int>(sets.size()); }
    ColorSet color_set(int v) const { return ColorSet{a, sets[v]}; }

    friend bool operator==(const FractionalColoring& x, const FractionalColoring& y) {
        return x.a == y.a && x.b == y.b && x.sets == y.sets;
    }
};

struct PanchromaticColoring {
    int a = 0;
    std::vector<int> colors;

    int vertex_count() const { return static_cast<int>(colors.size()); }

    friend bool operator==(const PanchromaticColoring& x, const PanchromaticColoring& y) {
        return x.a == y.a && x.colors == y.colors;
    }
};

inline void validate_coloring(const FractionalColoring& chi) {
    if (chi.a < 1 || chi.a > kMaxPalette || chi.b < 1 || chi.b > chi.a)
        throw InvalidParams("coloring requires 1 <= b <= a <= 64");
    for (std::uint64_t m : chi.sets) {
        if (m & ~full_mask(chi.a)) throw InvalidParams("color outside palette");
        if (std::popcount(m) != chi.b) throw InvalidParams("vertex does not hold exactly b colors");
    }
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

/// Uniform b-subset of {0,...,a-1} via partial Fisher-Yates.
inline std::uint64_t random_color_mask(int a, int b, Rng& rng) {
    std::array<std::uint8_t, kMaxPalette> pool;
    for (int i = 0; i < a; ++i) pool[i] = static_cast<std::uint8_t>(i);
    std::uint64_t mask = 0;
    for (int i = 0; i < b; ++i) {
        int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(a - i)));
        std::swap(pool[i], pool[j]);
        mask |= 1ULL << pool[i];
    }
    return mask;
}

inline FractionalColoring random_fractional_coloring(int vertex_count, int a, int b, Rng& rng) {
    if (a < 1 || a > kMaxPalette || b < 1 || b > a)
        throw InvalidParams("random_fractional_coloring requires 1 <= b <= a <= 64");
    FractionalColoring chi{a, b, {}};
    chi.sets.reserve(vertex_count);
    for (int v = 0; v < vertex_count; ++v) chi.sets.push_back(random_color_mask(a, b, rng));
    return chi;
}

inline FractionalColoring random_fractional_coloring(const Hypergraph& h, int a, int b,
                                                     std::uint64_t seed) {
    Rng rng(seed);
    return random_fractional_coloring(h.vertex_count, a, b, rng);
}

// ---------------------------------------------------------------------------
// properness
// ---------------------------------------------------------------------------

struct MonoPair {
    int edge;
    int color;

    friend bool operator==(const MonoPair& x, const MonoPair& y) {
        return x.edge == y.edge && x.color == y.color;
    }
};

inline void check_cover(const Hypergraph& h, int coloring_vertices) {
    if (coloring_vertices != h.vertex_count)
        throw SizeMismatch("coloring covers " + std::to_string(coloring_vertices) +
                           " vertices, hypergraph has " + std::to_string(h.vertex_count));
}

/// Colors common to every vertex of edge e.
inline std::uint64_t edge_common_mask(const FractionalColoring& chi, const std::vector<int>& e) {
    std::uint64_t common = ~0ULL;
    for (int v : e) common &= chi.sets[v];
    return common;
}

/// All (edge index, color) pairs where the color sits in every vertex of the
/// edge; empty exactly when chi is a proper coloring of h.
inline std::vector<MonoPair> monochromatic_pairs(const Hypergraph& h,
                                                 const FractionalColoring& chi) {
    check_cover(h, chi.vertex_count());
    std::vector<MonoPair> out;
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
        std::uint64_t common = edge_common_mask(chi, h.edges[i]) & full_mask(chi.a);
        while (common) {
            int c = std::countr_zero(common);
            out.push_back({static_cast<int>(i), c});
            common &= common - 1;
        }
    }
    return out;
}

inline bool is_proper(const Hypergraph& h, const FractionalColoring& chi) {
    check_cover(h, chi.vertex_count());
    for (const auto& e : h.edges) {
        if (edge_common_mask(chi, e) & full_mask(chi.a)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// (a:a-1) <-> panchromatic bijection
// ---------------------------------------------------------------------------

/// Maps each vertex to its unique missing color; requires b = a-1.
inline PanchromaticColoring to_panchromatic(const FractionalColoring& chi) {
    if (chi.b != chi.a - 1) throw NotAMinusOne("to_panchromatic requires b = a-1");
    PanchromaticColoring c{chi.a, {}};
    c.colors.reserve(chi.sets.size());
    for (std::uint64_t m : chi.sets)
        c.colors.push_back(std::countr_zero(~m & full_mask(chi.a)));
    return c;
}

/// Gives each vertex all colors except its current one (b = a-1).
inline FractionalColoring from_panchromatic(const PanchromaticColoring& c) {
    if (c.a < 2) throw InvalidParams("from_panchromatic requires a >= 2");
    FractionalColoring chi{c.a, c.a - 1, {}};
    chi.sets.reserve(c.colors.size());
    for (int color : c.colors) {
        if (color < 0 || color >= c.a) throw InvalidParams("color out of palette range");
        chi.sets.push_back(full_mask(c.a) ^ (1ULL << color));
    }
    return chi;
}

/// True iff the vertex colors of every edge cover the whole palette.
inline bool is_panchromatic(const Hypergraph& h, const PanchromaticColoring& c) {
    check_cover(h, c.vertex_count());
    for (const auto& e : h.edges) {
        std::uint64_t seen = 0;
        for (int v : e) seen |= 1ULL << c.colors[v];
        if (seen != full_mask(c.a)) return false;
    }
    return true;
}

/// k-fold blow-up: color g becomes {k*g, ..., k*g+k-1}; proper (a:b) maps to
/// proper (ka:kb).
inline FractionalColoring blow_up(const FractionalColoring& chi, int k) {
    if (k < 1 || chi.a * k > kMaxPalette) throw InvalidParams("blow_up: palette would exceed 64");
    FractionalColoring out{chi.a * k, chi.b * k, {}};
    out.sets.reserve(chi.sets.size());
    std::uint64_t block = full_mask(k);
    for (std::uint64_t m : chi.sets) {
        std::uint64_t big = 0;
        while (m) {
            int c = std::countr_zero(m);
            big |= block << (k * c);
            m &= m - 1;
        }
        out.sets.push_back(big);
    }
    return out;
}

// ---------------------------------------------------------------------------
// file formats
//   fractional:   "a b v" header, then v lines of b colors (ascending)
//   panchromatic: "a v" header, then v lines of one color
// ---------------------------------------------------------------------------

inline std::string serialize_fractional_coloring(const FractionalColoring& chi) {
    std::ostringstream out;
    out << chi.a << ' ' << chi.b << ' ' << chi.sets.size() << '\n';
    for (std::uint64_t m : chi.sets) {
        bool first = true;
        while (m) {
            int c = std::countr_zero(m);
            out << (first ? "" : " ") << c;
            first = false;
            m &= m - 1;
        }
        out << '\n';
    }
    return out.str();
}

inline FractionalColoring parse_fractional_coloring(const std::string& text) {
    std::istringstream in(text);
    int a = 0, b = 0;
    long long v = 0;
    if (!(in >> a >> b >> v)) throw ParseError(1, "coloring header must be \"a b v\"");
    if (a < 1 || a > kMaxPalette || b < 1 || b > a || v < 0)
        throw ParseError(1, "coloring header values out of range");
    FractionalColoring chi{a, b, {}};
    for (long long i = 0; i < v; ++i) {
        std::vector<int> colors(b);
        for (int j = 0; j < b; ++j) {
            if (!(in >> colors[j])) throw ParseError(static_cast<int>(i + 2), "missing color");
        }
        std::uint64_t mask = 0;
        for (int c : colors) {
            if (c < 0 || c >= a) throw ParseError(static_cast<int>(i + 2), "color out of range");
            if ((mask >> c) & 1) throw ParseError(static_cast<int>(i + 2), "repeated color");
            mask |= 1ULL << c;
        }
        chi.sets.push_back(mask);
    }
    return chi;
}

inline std::string serialize_panchromatic(const PanchromaticColoring& c) {
    std::ostringstream out;
    out << c.a << ' ' << c.colors.size() << '\n';
    for (int color : c.colors) out << color << '\n';
    return out.str();
}

inline PanchromaticColoring parse_panchromatic(const std::string& text) {
    std::istringstream in(text);
    int a = 0;
    long long v = 0;
    if (!(in >> a >> v)) throw ParseError(1, "panchromatic header must be \"a v\"");
    if (a < 1 || a > kMaxPalette || v < 0) throw ParseError(1, "header values out of range");
    PanchromaticColoring c{a, {}};
    for (long long i = 0; i < v; ++i) {
        int color;
        if (!(in >> color)) throw ParseError(static_cast<int>(i + 2), "missing color");
        if (color < 0 || color >= a) throw ParseError(static_cast<int>(i + 2), "color out of range");
        c.colors.push_back(color);
    }
    return c;
}

}  // namespace frachyp
