#pragma once

#include <cstdint>

namespace horolab {

// splitmix64 finalizer (Steele, Lea, Flood / Vigna). Fixed constants, fully
// portable: the same inputs give the same bits on every platform.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b));
}

inline constexpr std::uint32_t kRightFactorTag = 0;
inline constexpr std::uint32_t kLeftFactorTag = 1;

// Deterministic source of open/closed bits for percolation edges.
//
// The bit of an edge is a pure function of (master_seed, tree_tag, edge
// address): the address is hashed as a chain of splitmix64 steps, one per
// child index on the path from the window root, and the final state is
// thresholded against the retention probability. The chain state of a vertex
// can be cached and extended one step per child, so a tree sampler and a
// path-enumerating counter consume bit-for-bit identical randomness.
struct BitSource {
    std::uint64_t master_seed = 0;
    std::uint32_t tree_tag = kRightFactorTag;

    std::uint64_t root_state() const {
        return splitmix64(master_seed ^ splitmix64(0x5851f42d4c957f2dULL + tree_tag));
    }

    static std::uint64_t step(std::uint64_t state, int child_index) {
        return splitmix64(state ^ static_cast<std::uint64_t>(child_index));
    }

    // Bernoulli(p) decision attached to the chain state of an edge. The state
    // does not depend on p, so raising p only ever opens more edges (the
    // coupling behind monotonicity checks).
    static bool state_open(std::uint64_t edge_state, double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        const long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;
        const std::uint64_t threshold =
            scaled >= 18446744073709551615.0L ? UINT64_MAX : static_cast<std::uint64_t>(scaled);
        return edge_state < threshold;
    }

    // Independent per-trial source: folds a salt (h, trial index, ...) into
    // the master seed so parallel trials are scheduling-independent.
    BitSource with_salt(std::uint64_t salt) const {
        return BitSource{mix64(master_seed, salt), tree_tag};
    }
};

}  // namespace horolab
