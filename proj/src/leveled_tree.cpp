#include "horolab/leveled_tree.hpp"

#include <algorithm>
#include <cmath>

namespace horolab {

double offspring_pmf(const TreeParams& params, int k) {
    params.validate();
    if (k < params.alpha_min || k > params.alpha_max) return 0.0;
    const int n = params.alpha_max - params.alpha_min;
    const int j = k - params.alpha_min;
    double binom = 1.0;
    for (int i = 0; i < j; ++i) binom = binom * (n - i) / (i + 1);
    const double p = params.retention;
    return binom * std::pow(p, j) * std::pow(1.0 - p, n - j);
}

double mean_offspring(const TreeParams& params) {
    params.validate();
    return params.alpha_min + params.retention * (params.alpha_max - params.alpha_min);
}

bool edge_open(const BitSource& bits, const TreeParams& params, const EdgeAddress& addr) {
    params.validate();
    if (addr.path.empty()) throw ParameterError("edge_open: empty edge address");
    std::uint64_t state = bits.root_state();
    for (int k : addr.path) {
        if (k < 1 || k > params.alpha_max)
            throw ParameterError("edge_open: child index out of 1..alpha_max");
        state = BitSource::step(state, k);
    }
    if (addr.path.back() <= params.alpha_min) return true;
    return BitSource::state_open(state, params.retention);
}

std::pair<int, int> LeveledTree::child_range(VertexId v) const {
    check_vertex(v);
    if (v.level == top_level()) return {0, 0};
    const auto& next = levels[v.level - root_level + 1];
    // children are contiguous and sorted by parent index
    auto lo = std::lower_bound(next.begin(), next.end(), v.index,
                               [](const Node& n, int p) { return n.parent < p; });
    auto hi = std::upper_bound(next.begin(), next.end(), v.index,
                               [](int p, const Node& n) { return p < n.parent; });
    return {static_cast<int>(lo - next.begin()), static_cast<int>(hi - next.begin())};
}

std::vector<int> LeveledTree::path_of(VertexId v) const {
    check_vertex(v);
    std::vector<int> path;
    VertexId cur = v;
    while (cur.level > root_level) {
        const Node& n = levels[cur.level - root_level][cur.index];
        path.push_back(n.child_index);
        cur = VertexId{cur.level - 1, n.parent};
    }
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

void grow_levels(LeveledTree& tree, int target_height, const TreeParams& params,
                 std::size_t max_vertices) {
    std::size_t total = tree.vertex_count();
    while (tree.height < target_height) {
        const auto& cur = tree.levels.back();
        std::vector<LeveledTree::Node> next;
        next.reserve(cur.size() * params.alpha_min + 1);
        for (std::int32_t pi = 0; pi < static_cast<std::int32_t>(cur.size()); ++pi) {
            const std::uint64_t pstate = cur[pi].bit_state;
            for (int k = 1; k <= params.alpha_max; ++k) {
                const std::uint64_t estate = BitSource::step(pstate, k);
                const bool open =
                    k <= params.alpha_min || BitSource::state_open(estate, params.retention);
                if (open)
                    next.push_back({pi, static_cast<std::uint8_t>(k), estate});
            }
        }
        total += next.size();
        if (total > max_vertices)
            throw ResourceLimitError("tree vertex cap (" + std::to_string(max_vertices) +
                                     ") exceeded while sampling window");
        tree.levels.push_back(std::move(next));
        ++tree.height;
    }
}

}  // namespace

LeveledTree sample_window_tree(const TreeParams& params, int root_level, int height,
                               const BitSource& bits, std::size_t max_vertices) {
    params.validate();
    if (height < 0) throw ParameterError("sample_window_tree: height must be >= 0");
    LeveledTree tree;
    tree.root_level = root_level;
    tree.height = 0;
    tree.params = params;
    tree.levels.push_back({LeveledTree::Node{-1, 0, bits.root_state()}});
    grow_levels(tree, height, params, max_vertices);
    return tree;
}

LevelCounts level_counts(const LeveledTree& tree) {
    LevelCounts out;
    out.base_level = tree.root_level;
    out.counts.reserve(tree.levels.size());
    for (const auto& lv : tree.levels) out.counts.push_back(static_cast<long long>(lv.size()));
    return out;
}

namespace {

long long formula_count(const TreeParams& params, double p, std::uint64_t state, int depth) {
    if (depth == 0) return 1;
    long long total = 0;
    for (int k = 1; k <= params.alpha_max; ++k) {
        const std::uint64_t estate = BitSource::step(state, k);
        const bool indicator = k <= params.alpha_min || BitSource::state_open(estate, p);
        // a closed edge zeroes the product of every tuple through it
        if (indicator) total += formula_count(params, p, estate, depth - 1);
    }
    return total;
}

}  // namespace

long long leaf_count_formula(const TreeParams& params, const BitSource& bits, int h, int j,
                             long long enumeration_cap) {
    params.validate();
    if (j < -h) throw ParameterError("leaf_count_formula: level below window root");
    const int depth = h + j;
    long long tuples = 1;
    for (int i = 0; i < depth; ++i) {
        if (tuples > enumeration_cap / params.alpha_max)
            throw ResourceLimitError("enumeration cap (" + std::to_string(enumeration_cap) +
                                     ") exceeded: alpha^(h+j) too large");
        tuples *= params.alpha_max;
    }
    return formula_count(params, params.retention, bits.root_state(), depth);
}

bool is_ancestor(const LeveledTree& tree, VertexId u, VertexId v) {
    tree.check_vertex(u);
    tree.check_vertex(v);
    if (u.level >= v.level) return false;
    VertexId cur = v;
    while (cur.level > u.level) cur = tree.parent_of(cur);
    return cur.index == u.index;
}

LeveledTree extend_window(const LeveledTree& tree, int extra, const BitSource& bits,
                          std::size_t max_vertices) {
    if (extra < 0) throw ParameterError("extend_window: extra must be >= 0");
    if (tree.levels.empty() || tree.levels[0].size() != 1)
        throw ParameterError("extend_window: malformed window");
    if (tree.levels[0][0].bit_state != bits.root_state())
        throw ParameterError("extend_window: BitSource does not match the sampled tree");
    LeveledTree out = tree;
    grow_levels(out, tree.height + extra, tree.params, max_vertices);
    return out;
}

std::pair<int, int> descendant_range(const LeveledTree& tree, VertexId apex, int level) {
    tree.check_vertex(apex);
    if (level < apex.level || level > tree.top_level())
        throw ParameterError("descendant_range: level outside the apex subtree span");
    int begin = apex.index, end = apex.index + 1;
    for (int l = apex.level; l < level; ++l) {
        if (begin == end) return {0, 0};
        const auto [b1, e1] = tree.child_range(VertexId{l, begin});
        const auto [b2, e2] = tree.child_range(VertexId{l, end - 1});
        begin = b1;
        end = e2;
    }
    return {begin, end};
}

LeveledTree attach_parent_stub(const LeveledTree& tree) {
    if (tree.levels.empty() || tree.levels[0].size() != 1)
        throw ParameterError("attach_parent_stub: malformed window");
    LeveledTree out;
    out.root_level = tree.root_level - 1;
    out.height = tree.height + 1;
    out.params = tree.params;
    out.levels.reserve(tree.levels.size() + 1);
    out.levels.push_back({LeveledTree::Node{-1, 0, 0}});
    std::vector<LeveledTree::Node> old_root_level = tree.levels[0];
    old_root_level[0].parent = 0;
    old_root_level[0].child_index = 1;  // unmarked by convention
    out.levels.push_back(std::move(old_root_level));
    for (std::size_t d = 1; d < tree.levels.size(); ++d) out.levels.push_back(tree.levels[d]);
    return out;
}

}  // namespace horolab
