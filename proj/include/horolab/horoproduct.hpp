#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "horolab/leveled_tree.hpp"

namespace horolab {

inline constexpr std::size_t kDefaultProductVertexCap = 10'000'000;

// Product vertex <k', k>: the right coordinate sits at Busemann level `level`
// in its own tree, the left coordinate at level -`level` in its own tree.
struct HoroVertex {
    int level = 0;
    int left_index = 0;
    int right_index = 0;
    bool operator==(const HoroVertex&) const = default;
};

// Explicit finite horocyclic product of two leveled windows under the
// opposite-level constraint. Vertices are indexed level-by-level as
// (left index, right index); adjacency is generated from the factor trees on
// demand (an edge steps the right coordinate to a child exactly when it steps
// the left coordinate to its parent, and vice versa).
class HoroGraph {
public:
    using VId = std::int64_t;

    LeveledTree left;   // primed factor T'
    LeveledTree right;  // factor T
    int level_min = 0;
    int level_max = 0;
    VId root = -1;  // factor-root pair when levels align, else the (0,0) pair
                    // at level 0 (or at level_min when 0 is out of range)

    VId vertex_count() const { return offsets_.back(); }

    long long left_level_size(int level) const { return left.level_size(-level); }
    long long right_level_size(int level) const { return right.level_size(level); }
    long long level_vertex_count(int level) const {
        return left_level_size(level) * right_level_size(level);
    }

    VId encode(const HoroVertex& v) const;
    HoroVertex decode(VId id) const;
    bool valid(VId id) const { return id >= 0 && id < vertex_count(); }
    int level_of(VId id) const { return decode(id).level; }

    int degree(VId id) const;
    std::vector<VId> neighbors(VId id) const;
    // Neighbors annotated with the edge kind: true = remanent (neither factor
    // edge marked), false = percolative.
    std::vector<std::pair<VId, bool>> neighbors_with_kind(VId id) const;

    VertexId left_vertex(VId id) const;
    VertexId right_vertex(VId id) const;

    void check_vertex(VId id) const {
        if (!valid(id)) throw UnknownVertexError("product vertex id out of range");
    }

    friend HoroGraph build_product(const LeveledTree&, const LeveledTree&, std::size_t);

private:
    std::vector<VId> offsets_;  // offsets_[i] = first id of level level_min+i
};

// Product of two windows; errors if no level satisfies the opposite-level
// constraint or the vertex count would exceed the cap.
HoroGraph build_product(const LeveledTree& left, const LeveledTree& right,
                        std::size_t max_vertices = kDefaultProductVertexCap);

// Deterministic (p=1) window of DL_{alpha_left,alpha_right} spanning product
// levels -h..h, built from two full windows rooted at -h.
HoroGraph build_dl_window(int alpha_left, int alpha_right, int h,
                          std::size_t max_vertices = kDefaultProductVertexCap);

// Vertex set reachable from `start`, sorted by id.
std::vector<HoroGraph::VId> connected_component(const HoroGraph& graph, HoroGraph::VId start);

long long count_components(const HoroGraph& graph);

// Bridge edge between two disjoint factor windows: `child` must be the root
// of its part, one level above `parent` in the other part.
struct FactorBridge {
    int parent_part = 0;  // 0 = part1, 1 = part2
    VertexId parent;
    int child_part = 1;
    VertexId child;
};

struct UnionProductReport {
    long long components_part1 = 0;       // of left ∘ part1
    long long components_part2 = 0;       // of left ∘ part2
    long long components_union = 0;       // of left ∘ (part1 + part2)
    std::optional<long long> components_bridged;
    bool pass = false;
};

// Checks that the product with a disjoint-union right factor splits into
// exactly the components of the two part-products, and that one bridging
// factor edge reconnects it into a single component.
UnionProductReport union_product_check(const LeveledTree& left, const LeveledTree& part1,
                                       const LeveledTree& part2,
                                       const std::optional<FactorBridge>& bridge);

// Component count of left ∘ (union of parts [+ bridges]); exposed for
// repeated-application checks with more than two parts.
long long union_product_component_count(const LeveledTree& left,
                                        const std::vector<const LeveledTree*>& parts,
                                        const std::vector<FactorBridge>& bridges);

}  // namespace horolab
