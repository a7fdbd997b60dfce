#pragma once

#include <cstdint>
#include <vector>

namespace frachyp {

/**
 * Seeded PRNG for reproducible experiments (splitmix64 core).
 *
 * Every random draw in the toolkit goes through this engine so that a run is
 * bit-identical across platforms for a fixed seed.  std:: distributions are
 * avoided on purpose: their output is implementation-defined.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), unbiased (rejection sampling). bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            std::uint64_t x = next_u64();
            if (x >= threshold) return x % bound;
        }
    }

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from (seed, stream id); used by the
/// experiment harness so hypergraph sampling and solving do not share draws.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    Rng rng(seed ^ (0xA02BDBF7BB3C0A7ULL * (stream + 1)));
    return rng.next_u64();
}

/**
 * Uniform n-subset sampler over {0,...,v-1} (Floyd's algorithm).
 * Keeps a reusable membership bitmap so repeated draws do not allocate.
 */
class SubsetSampler {
public:
    explicit SubsetSampler(int universe) : universe_(universe), bits_((universe + 63) / 64, 0) {}

    /// Appends a sorted uniform n-subset to `out` (out is cleared first).
    void sample(int n, Rng& rng, std::vector<int>& out) {
        out.clear();
        for (int j = universe_ - n; j < universe_; ++j) {
            int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
            int pick = test(t) ? j : t;
            set(pick);
            out.push_back(pick);
        }
        for (int x : out) clear(x);
        // insertion sort: n is small and the tail is nearly sorted
        for (std::size_t i = 1; i < out.size(); ++i) {
            int key = out[i];
            std::size_t j = i;
            while (j > 0 && out[j - 1] > key) {
                out[j] = out[j - 1];
                --j;
            }
            out[j] = key;
        }
    }

private:
    bool test(int i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { bits_[i >> 6] |= 1ULL << (i & 63); }
    void clear(int i) { bits_[i >> 6] &= ~(1ULL << (i & 63)); }

    int universe_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace frachyp
