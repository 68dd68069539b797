#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "horolab/bits.hpp"
#include "horolab/errors.hpp"

namespace horolab {

inline constexpr std::size_t kDefaultTreeVertexCap = 10'000'000;
inline constexpr long long kDefaultEnumerationCap = 10'000'000;

// Percolation parameters of one tree factor: every vertex keeps its children
// with index 1..alpha_min unconditionally (unmarked) and each child with index
// alpha_min+1..alpha_max independently with probability `retention` (marked).
struct TreeParams {
    int alpha_min = 1;   // minimum offspring
    int alpha_max = 1;   // maximum offspring
    double retention = 1.0;

    void validate() const {
        if (alpha_min < 0 || alpha_max < 1 || alpha_min > alpha_max)
            throw ParameterError("TreeParams: need 0 <= alpha_min <= alpha_max, alpha_max >= 1");
        if (!(retention >= 0.0 && retention <= 1.0))
            throw ParameterError("TreeParams: retention must be in [0,1]");
    }

    bool operator==(const TreeParams&) const = default;
};

// Path of child indices identifying one edge below the window root: the edge
// between level l-1 and l is named by (k_1,...,k_l).
struct EdgeAddress {
    std::vector<int> path;
};

// Handle of a vertex inside a LeveledTree: absolute Busemann level plus index
// within that level's vertex list.
struct VertexId {
    int level = 0;
    int index = 0;
    bool operator==(const VertexId&) const = default;
};

// Finite window of a percolation subtree of a regular tree with a fixed end.
// Levels run from root_level (the single window root) upward to
// root_level+height; every non-root vertex stores its parent within the
// previous level and the child index of its parent edge. The edge is marked
// iff the child index exceeds alpha_min.
class LeveledTree {
public:
    struct Node {
        std::int32_t parent = -1;     // index into the previous level
        std::uint8_t child_index = 0; // 0 for the root, else 1..alpha_max
        std::uint64_t bit_state = 0;  // hash-chain state of the parent edge
    };

    int root_level = 0;
    int height = 0;
    TreeParams params;
    std::vector<std::vector<Node>> levels;  // levels[d] = vertices at root_level + d

    int top_level() const { return root_level + height; }
    bool has_level(int level) const { return level >= root_level && level <= top_level(); }

    std::size_t vertex_count() const {
        std::size_t n = 0;
        for (const auto& lv : levels) n += lv.size();
        return n;
    }

    long long level_size(int level) const {
        return has_level(level) ? static_cast<long long>(levels[level - root_level].size()) : 0;
    }

    const Node& node(VertexId v) const {
        check_vertex(v);
        return levels[v.level - root_level][v.index];
    }

    bool is_marked_edge(VertexId v) const { return node(v).child_index > params.alpha_min; }

    VertexId parent_of(VertexId v) const {
        const Node& n = node(v);
        if (n.parent < 0) throw UnknownVertexError("parent_of: vertex is the window root");
        return VertexId{v.level - 1, n.parent};
    }

    // Children of v occupy a contiguous index range of the next level
    // (construction is breadth-first in parent order).
    std::pair<int, int> child_range(VertexId v) const;

    int child_count(VertexId v) const {
        auto [b, e] = child_range(v);
        return e - b;
    }

    // Child indices from the root down to v, e.g. {2,1} for the first child
    // of the root's second child. Empty for the root.
    std::vector<int> path_of(VertexId v) const;

    void check_vertex(VertexId v) const {
        if (!has_level(v.level) || v.index < 0 ||
            v.index >= static_cast<int>(levels[v.level - root_level].size()))
            throw UnknownVertexError("vertex (" + std::to_string(v.level) + "," +
                                     std::to_string(v.index) + ") not in tree");
    }
};

// Per-level vertex counts X_j of a window tree.
struct LevelCounts {
    int base_level = 0;
    std::vector<long long> counts;

    int top_level() const { return base_level + static_cast<int>(counts.size()) - 1; }
    bool has_level(int level) const { return level >= base_level && level <= top_level(); }
    long long at(int level) const {
        if (!has_level(level))
            throw ParameterError("LevelCounts: level " + std::to_string(level) + " not covered");
        return counts[level - base_level];
    }
};

// P[offspring = k] under the binomial law supported on {alpha_min..alpha_max}.
double offspring_pmf(const TreeParams& params, int k);

// Mean offspring z = alpha_min + p (alpha_max - alpha_min).
double mean_offspring(const TreeParams& params);

// Open/closed bit of one edge: unmarked edges (last index <= alpha_min) are
// always open; marked edges carry the deterministic Bernoulli(p) bit of their
// address chain.
bool edge_open(const BitSource& bits, const TreeParams& params, const EdgeAddress& addr);

// Breadth-first window sampler: keeps child k of every vertex iff the child
// edge is open. Deterministic given the BitSource.
LeveledTree sample_window_tree(const TreeParams& params, int root_level, int height,
                               const BitSource& bits,
                               std::size_t max_vertices = kDefaultTreeVertexCap);

LevelCounts level_counts(const LeveledTree& tree);

// Nested-sum count of level-j vertices of the window rooted at -h: sums over
// all (k_1..k_{h+j}) in {1..alpha_max}^{h+j} the product of per-edge
// indicators (unmarked or open), consuming the same bits as the sampler.
// Independent counting route for level_counts.
long long leaf_count_formula(const TreeParams& params, const BitSource& bits, int h, int j,
                             long long enumeration_cap = kDefaultEnumerationCap);

// Strict ancestor relation: true iff u lies on the parent path from v.
bool is_ancestor(const LeveledTree& tree, VertexId u, VertexId v);

// Window grown by `extra` levels past the current top, continuing the same
// bit chains; the original window is a level-prefix of the result. The
// BitSource must be the one the tree was sampled from.
LeveledTree extend_window(const LeveledTree& tree, int extra, const BitSource& bits,
                          std::size_t max_vertices = kDefaultTreeVertexCap);

// Re-roots the window one level down on a single parent vertex (the new root
// has the old root as its only child). Used to expose a window's bottom level
// inside a larger host product; no new sampling happens below the old root.
LeveledTree attach_parent_stub(const LeveledTree& tree);

// Index interval [begin, end) of the descendants-or-equal of `apex` within
// `level` (breadth-first order keeps each vertex's descendants contiguous).
std::pair<int, int> descendant_range(const LeveledTree& tree, VertexId apex, int level);

}  // namespace horolab
