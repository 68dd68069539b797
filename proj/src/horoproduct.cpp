#include "horolab/horoproduct.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace horolab {

HoroGraph::VId HoroGraph::encode(const HoroVertex& v) const {
    if (v.level < level_min || v.level > level_max)
        throw UnknownVertexError("product level out of range");
    const long long ls = left_level_size(v.level);
    const long long rs = right_level_size(v.level);
    if (v.left_index < 0 || v.left_index >= ls || v.right_index < 0 || v.right_index >= rs)
        throw UnknownVertexError("product coordinates out of range");
    return offsets_[v.level - level_min] + static_cast<VId>(v.left_index) * rs + v.right_index;
}

HoroVertex HoroGraph::decode(VId id) const {
    check_vertex(id);
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), id);
    const int li = static_cast<int>(it - offsets_.begin()) - 1;
    const long long rs = right_level_size(level_min + li);
    const VId rel = id - offsets_[li];
    return HoroVertex{level_min + li, static_cast<int>(rel / rs), static_cast<int>(rel % rs)};
}

VertexId HoroGraph::left_vertex(VId id) const {
    const HoroVertex v = decode(id);
    return VertexId{-v.level, v.left_index};
}

VertexId HoroGraph::right_vertex(VId id) const {
    const HoroVertex v = decode(id);
    return VertexId{v.level, v.right_index};
}

int HoroGraph::degree(VId id) const {
    const HoroVertex v = decode(id);
    int deg = 0;
    if (v.level < level_max) deg += right.child_count(VertexId{v.level, v.right_index});
    if (v.level > level_min) deg += left.child_count(VertexId{-v.level, v.left_index});
    return deg;
}

std::vector<HoroGraph::VId> HoroGraph::neighbors(VId id) const {
    std::vector<VId> out;
    for (auto [n, kind] : neighbors_with_kind(id)) out.push_back(n);
    return out;
}

std::vector<std::pair<HoroGraph::VId, bool>> HoroGraph::neighbors_with_kind(VId id) const {
    const HoroVertex v = decode(id);
    std::vector<std::pair<VId, bool>> out;
    if (v.level < level_max) {
        // up: right coordinate steps to a child, left coordinate to its parent
        const VertexId lv{-v.level, v.left_index};
        const int left_parent = left.node(lv).parent;
        const bool left_marked = left.is_marked_edge(lv);
        auto [rb, re] = right.child_range(VertexId{v.level, v.right_index});
        const long long rs_up = right_level_size(v.level + 1);
        const VId base = offsets_[v.level + 1 - level_min] +
                         static_cast<VId>(left_parent) * rs_up;
        for (int rj = rb; rj < re; ++rj) {
            const bool right_marked =
                right.node(VertexId{v.level + 1, rj}).child_index > right.params.alpha_min;
            out.emplace_back(base + rj, !left_marked && !right_marked);
        }
    }
    if (v.level > level_min) {
        const VertexId rv{v.level, v.right_index};
        const int right_parent = right.node(rv).parent;
        const bool right_marked = right.is_marked_edge(rv);
        auto [lb, le] = left.child_range(VertexId{-v.level, v.left_index});
        const long long rs_down = right_level_size(v.level - 1);
        for (int lj = lb; lj < le; ++lj) {
            const bool left_marked =
                left.node(VertexId{-v.level + 1, lj}).child_index > left.params.alpha_min;
            out.emplace_back(offsets_[v.level - 1 - level_min] +
                                 static_cast<VId>(lj) * rs_down + right_parent,
                             !left_marked && !right_marked);
        }
    }
    return out;
}

HoroGraph build_product(const LeveledTree& left, const LeveledTree& right,
                        std::size_t max_vertices) {
    HoroGraph g;
    g.left = left;
    g.right = right;
    g.level_min = std::max(right.root_level, -left.top_level());
    g.level_max = std::min(right.top_level(), -left.root_level);
    if (g.level_min > g.level_max)
        throw ParameterError("build_product: no level satisfies the opposite-level constraint");
    g.offsets_.assign(1, 0);
    for (int l = g.level_min; l <= g.level_max; ++l) {
        const long long n = g.left_level_size(l) * g.right_level_size(l);
        g.offsets_.push_back(g.offsets_.back() + n);
        if (static_cast<std::size_t>(g.offsets_.back()) > max_vertices)
            throw ResourceLimitError("product vertex cap (" + std::to_string(max_vertices) +
                                     ") exceeded");
    }
    if (right.root_level == -left.root_level) {
        g.root = g.encode(HoroVertex{right.root_level, 0, 0});
    } else if (g.level_min <= 0 && 0 <= g.level_max) {
        g.root = g.encode(HoroVertex{0, 0, 0});
    } else {
        g.root = g.encode(HoroVertex{g.level_min, 0, 0});
    }
    return g;
}

HoroGraph build_dl_window(int alpha_left, int alpha_right, int h, std::size_t max_vertices) {
    if (h < 0 || alpha_left < 1 || alpha_right < 1)
        throw ParameterError("build_dl_window: need h >= 0 and alphas >= 1");
    const BitSource bits{0, 0};
    const LeveledTree lt = sample_window_tree({alpha_left, alpha_left, 1.0}, -h, 2 * h, bits,
                                              max_vertices);
    const LeveledTree rt = sample_window_tree({alpha_right, alpha_right, 1.0}, -h, 2 * h, bits,
                                              max_vertices);
    return build_product(lt, rt, max_vertices);
}

std::vector<HoroGraph::VId> connected_component(const HoroGraph& graph, HoroGraph::VId start) {
    graph.check_vertex(start);
    std::vector<char> seen(static_cast<std::size_t>(graph.vertex_count()), 0);
    std::deque<HoroGraph::VId> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    std::vector<HoroGraph::VId> comp;
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        comp.push_back(v);
        for (auto n : graph.neighbors(v)) {
            if (!seen[static_cast<std::size_t>(n)]) {
                seen[static_cast<std::size_t>(n)] = 1;
                queue.push_back(n);
            }
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

long long count_components(const HoroGraph& graph) {
    const auto n = graph.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    long long comps = 0;
    for (HoroGraph::VId s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        ++comps;
        std::deque<HoroGraph::VId> queue{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!queue.empty()) {
            const auto v = queue.front();
            queue.pop_front();
            for (auto nb : graph.neighbors(v)) {
                if (!seen[static_cast<std::size_t>(nb)]) {
                    seen[static_cast<std::size_t>(nb)] = 1;
                    queue.push_back(nb);
                }
            }
        }
    }
    return comps;
}

namespace {

// Product of the left window with a forest of right-factor parts plus
// optional bridging factor edges. Only used for component counting; vertices
// are materialized into an explicit adjacency map.
struct UnionProduct {
    struct Key {
        int part;
        int level;  // product level
        int left_index;
        int right_index;
        auto operator<=>(const Key&) const = default;
    };

    std::map<Key, std::vector<Key>> adj;

    void add_edge(const Key& a, const Key& b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    long long components() const {
        std::map<Key, char> seen;
        long long comps = 0;
        for (const auto& [k, _] : adj) {
            if (seen.count(k)) continue;
            ++comps;
            std::deque<Key> queue{k};
            seen[k] = 1;
            while (!queue.empty()) {
                const Key v = queue.front();
                queue.pop_front();
                auto it = adj.find(v);
                if (it == adj.end()) continue;
                for (const Key& n : it->second) {
                    if (!seen.count(n)) {
                        seen[n] = 1;
                        queue.push_back(n);
                    }
                }
            }
        }
        return comps;
    }
};

}  // namespace

long long union_product_component_count(const LeveledTree& left,
                                        const std::vector<const LeveledTree*>& parts,
                                        const std::vector<FactorBridge>& bridges) {
    UnionProduct up;
    for (int pi = 0; pi < static_cast<int>(parts.size()); ++pi) {
        const LeveledTree& part = *parts[pi];
        const int lmin = std::max(part.root_level, -left.top_level());
        const int lmax = std::min(part.top_level(), -left.root_level);
        if (lmin > lmax)
            throw ParameterError("union product: part " + std::to_string(pi) +
                                 " shares no level with the left factor");
        for (int l = lmin; l <= lmax; ++l) {
            const long long ls = left.level_size(-l);
            const long long rs = part.level_size(l);
            for (int li = 0; li < ls; ++li)
                for (int ri = 0; ri < rs; ++ri)
                    up.adj[{pi, l, li, ri}];  // materialize isolated vertices too
            if (l == lmax) continue;
            // up-edges within the part
            for (int li = 0; li < left.level_size(-l); ++li) {
                const int lp = left.node(VertexId{-l, li}).parent;
                for (int ri = 0; ri < rs; ++ri) {
                    auto [cb, ce] = part.child_range(VertexId{l, ri});
                    for (int rj = cb; rj < ce; ++rj)
                        up.add_edge({pi, l, li, ri}, {pi, l + 1, lp, rj});
                }
            }
        }
    }
    for (const auto& b : bridges) {
        const LeveledTree& child_part = *parts[b.child_part];
        const LeveledTree& parent_part = *parts[b.parent_part];
        if (b.child != VertexId{child_part.root_level, 0})
            throw ParameterError("union product bridge: child endpoint must be a part root");
        if (b.child.level != b.parent.level + 1)
            throw ParameterError("union product bridge: endpoints must sit on adjacent levels");
        parent_part.check_vertex(b.parent);
        const int l = b.parent.level;
        if (l < std::max(parent_part.root_level, -left.top_level()) ||
            l + 1 > std::min(child_part.top_level(), -left.root_level))
            throw ParameterError("union product bridge: endpoint level outside product range");
        for (int li = 0; li < left.level_size(-l); ++li) {
            const int lp = left.node(VertexId{-l, li}).parent;
            up.add_edge({b.parent_part, l, li, b.parent.index},
                        {b.child_part, l + 1, lp, b.child.index});
        }
    }
    return up.components();
}

UnionProductReport union_product_check(const LeveledTree& left, const LeveledTree& part1,
                                       const LeveledTree& part2,
                                       const std::optional<FactorBridge>& bridge) {
    UnionProductReport rep;
    rep.components_part1 = count_components(build_product(left, part1));
    rep.components_part2 = count_components(build_product(left, part2));
    rep.components_union = union_product_component_count(left, {&part1, &part2}, {});
    rep.pass = rep.components_union == rep.components_part1 + rep.components_part2;
    if (bridge) {
        rep.components_bridged = union_product_component_count(left, {&part1, &part2}, {*bridge});
        rep.pass = rep.pass && *rep.components_bridged == 1;
    }
    return rep;
}

}  // namespace horolab
