#include "doctest.h"

#include <algorithm>
#include <random>

#include "horolab/isoperimetry.hpp"
#include "horolab/statistics.hpp"

using namespace horolab;

namespace {

SubsetSelection select(std::vector<HoroGraph::VId> ids) {
    SubsetSelection sel{std::move(ids)};
    sel.normalize();
    return sel;
}

SubsetSelection whole_graph(const HoroGraph& g) {
    std::vector<HoroGraph::VId> ids(static_cast<std::size_t>(g.vertex_count()));
    for (HoroGraph::VId v = 0; v < g.vertex_count(); ++v) ids[static_cast<std::size_t>(v)] = v;
    return select(std::move(ids));
}

}  // namespace

TEST_CASE("boundaries of a path host") {
    const HoroGraph path = build_dl_window(1, 1, 5);  // 11 vertices, root at id 5
    SUBCASE("full selection has empty boundaries") {
        CHECK(outer_boundary(path, whole_graph(path)).empty());
        CHECK(inner_boundary(path, whole_graph(path)).empty());
        CHECK(iso_ratio(path, whole_graph(path), BoundaryMode::outer).ratio.is_zero());
    }
    SUBCASE("middle segment") {
        const SubsetSelection segment = select({4, 5, 6});
        CHECK(outer_boundary(path, segment) == std::vector<HoroGraph::VId>{3, 7});
        CHECK(inner_boundary(path, segment) == std::vector<HoroGraph::VId>{4, 6});
        CHECK(iso_ratio(path, segment, BoundaryMode::outer).ratio == Rational(2, 3));
    }
    SUBCASE("singleton") {
        const SubsetSelection one = select({5});
        CHECK(outer_boundary(path, one).size() == 2);
        CHECK(inner_boundary(path, one) == std::vector<HoroGraph::VId>{5});
    }
    SUBCASE("empty selection is an error") {
        CHECK_THROWS_AS(iso_ratio(path, SubsetSelection{}, BoundaryMode::outer), ParameterError);
    }
}

TEST_CASE("singleton interior vertex exposes its full neighborhood") {
    const HoroGraph g = build_dl_window(3, 3, 1);
    const SubsetSelection one = select({g.encode(HoroVertex{0, 1, 1})});
    CHECK(outer_boundary(g, one).size() == 6);
}

TEST_CASE("folner ratio formula") {
    SUBCASE("trivial h = 0 window counts both extremes") {
        LevelCounts unit{0, {1}};
        CHECK(folner_ratio(unit, unit, 0) == Rational(2, 1));
    }
    SUBCASE("deterministic regular windows give 2/(2h+1)") {
        for (int beta : {2, 3}) {
            for (int h = 0; h <= 12; ++h) {
                const LevelCounts counts =
                    simulate_level_counts({beta, beta, 1.0}, -h, 2 * h, 0);
                CHECK(folner_ratio(counts, counts, h) == Rational(2, 2 * h + 1));
                CHECK(folner_ratio_regular(beta, h) == Rational(2, 2 * h + 1));
            }
        }
    }
    SUBCASE("zero paired level is rejected") {
        LevelCounts extinct{-1, {1, 0, 1}};
        LevelCounts fine{-1, {1, 1, 1}};
        CHECK_THROWS_AS(folner_ratio(extinct, fine, 1), ParameterError);
    }
    SUBCASE("missing levels are rejected") {
        LevelCounts shallow{0, {1, 2}};
        CHECK_THROWS_AS(folner_ratio(shallow, shallow, 1), ParameterError);
    }
}

TEST_CASE("window boundary crosscheck") {
    SUBCASE("h = 0 counts the root twice, once per direction") {
        const BitSource lb{3, kLeftFactorTag}, rb{3, kRightFactorTag};
        const TreeParams p{1, 2, 0.5};
        const CrosscheckReport rep = window_boundary_crosscheck(
            sample_window_tree(p, 0, 0, lb), sample_window_tree(p, 0, 0, rb), 0, lb, rb);
        CHECK(rep.expected == 2);
        CHECK(rep.up == 1);
        CHECK(rep.down == 1);
        CHECK(rep.pass);
    }
    SUBCASE("deterministic beta = 2, h = 1") {
        const BitSource lb{0, kLeftFactorTag}, rb{0, kRightFactorTag};
        const TreeParams p{2, 2, 1.0};
        const CrosscheckReport rep = window_boundary_crosscheck(
            sample_window_tree(p, -1, 2, lb), sample_window_tree(p, -1, 2, rb), 1, lb, rb);
        CHECK(rep.expected == 8);
        CHECK(rep.up == 4);
        CHECK(rep.down == 4);
        CHECK(rep.window_volume == 12);  // (2h+1) * beta^(2h)
        CHECK(rep.pass);
    }
    SUBCASE("sampled windows match on 50 seeds") {
        const TreeParams p{2, 3, 0.5};
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const BitSource lb{seed, kLeftFactorTag}, rb{seed, kRightFactorTag};
            const CrosscheckReport rep = window_boundary_crosscheck(
                sample_window_tree(p, -2, 4, lb), sample_window_tree(p, -2, 4, rb), 2, lb, rb);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("tetraeder subsets in regular windows") {
    SUBCASE("volume and both ratio routes") {
        for (int beta : {2, 3}) {
            for (int N = 0; N <= 4; ++N) {
                const TetraederInstance inst = build_regular_tetraeder(beta, N);
                long long layer = 1;
                for (int i = 0; i < N; ++i) layer *= beta;
                CHECK(static_cast<long long>(inst.subset.members.size()) == (N + 1) * layer);
                const IsoReport rep = tetraeder_report(inst.host, inst.subset);
                CHECK(rep.ratio == Rational(2, N + 1));
                CHECK(rep.ratio == tetraeder_ratio_regular(beta, N));
                if (N >= 1) {
                    // two-sided exposure equals the inner boundary when the
                    // extreme levels are distinct
                    const IsoReport inner = iso_ratio(inst.host, inst.subset, BoundaryMode::inner);
                    CHECK(inner.boundary_count == rep.boundary_count);
                    CHECK(inner.ratio == Rational(2, N + 1));
                }
            }
        }
    }
    SUBCASE("N = 0 is a single vertex") {
        const TetraederInstance inst = build_regular_tetraeder(3, 0);
        CHECK(inst.subset.members.size() == 1);
        CHECK(tetraeder_report(inst.host, inst.subset).ratio == Rational(2, 1));
    }
    SUBCASE("apex validation") {
        const HoroGraph host = build_dl_window(2, 2, 2);
        CHECK_THROWS_AS(tetraeder_subset(host, VertexId{0, 0}, VertexId{0, 0}, 1),
                        ParameterError);
        CHECK_THROWS_AS(tetraeder_subset(host, VertexId{2, 0}, VertexId{-3, 0}, 1),
                        UnknownVertexError);
        // apexes valid in the factors but spanning past the window top
        const LeveledTree tall_left = sample_window_tree({2, 2, 1.0}, -3, 6, BitSource{0, 1});
        const LeveledTree right = sample_window_tree({2, 2, 1.0}, -2, 4, BitSource{0, 0});
        const HoroGraph uneven = build_product(tall_left, right);
        CHECK_THROWS_AS(tetraeder_subset(uneven, VertexId{2, 0}, VertexId{-3, 0}, 1),
                        ParameterError);
    }
}

TEST_CASE("anchored constant on a long path") {
    const HoroGraph path = build_dl_window(1, 1, 10);
    Rational prev(10, 1);
    for (int n = 1; n <= 8; ++n) {
        const AnchoredResult res = anchored_constant_exact(path, path.root, n);
        CHECK(res.min_ratio == Rational(2, n));
        CHECK(static_cast<int>(res.witness.size()) == n);
        CHECK(res.min_ratio <= prev);  // monotone non-increasing in n_max
        prev = res.min_ratio;
    }
    // singleton family: ratio = degree(root)
    CHECK(anchored_constant_exact(path, path.root, 1).min_ratio == Rational(2, 1));
    CHECK_THROWS_AS(anchored_constant_exact(path, path.root, 20), ParameterError);
}

namespace {

// brute-force oracle: filter all <=k subsets containing root for connectivity
Rational naive_anchored(const HoroGraph& g, HoroGraph::VId root, int k) {
    const int n = static_cast<int>(g.vertex_count());
    REQUIRE(n <= 31);
    Rational best(1'000'000, 1);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!(mask & (1u << root))) continue;
        const int size = __builtin_popcount(mask);
        if (size == 0 || size > k) continue;
        std::vector<HoroGraph::VId> members;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) members.push_back(v);
        // connectivity by BFS inside the mask
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<HoroGraph::VId> stack{members[0]};
        seen[static_cast<std::size_t>(members[0])] = 1;
        int reached = 0;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            ++reached;
            for (auto nb : g.neighbors(v))
                if ((mask & (1u << nb)) && !seen[static_cast<std::size_t>(nb)]) {
                    seen[static_cast<std::size_t>(nb)] = 1;
                    stack.push_back(nb);
                }
        }
        if (reached != size) continue;
        SubsetSelection sel{members};
        const Rational ratio(static_cast<long long>(outer_boundary(g, sel).size()),
                             static_cast<long long>(size));
        if (ratio < best) best = ratio;
    }
    return best;
}

}  // namespace

TEST_CASE("anchored enumeration agrees with the bitmask oracle") {
    for (int alpha_right : {2, 3}) {
        const HoroGraph host = build_dl_window(1, alpha_right, 1);  // 7 / 13 vertices
        for (int k = 1; k <= 5; ++k) {
            const AnchoredResult fast = anchored_constant_exact(host, host.root, k);
            CHECK(fast.min_ratio == naive_anchored(host, host.root, k));
        }
    }
}

TEST_CASE("anchored enumeration matches the oracle on irregular percolation hosts") {
    const LeveledTree line = sample_window_tree({1, 1, 1.0}, -2, 3, BitSource{0, kLeftFactorTag});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const LeveledTree right =
            sample_window_tree({1, 2, 0.4}, -1, 2, BitSource{seed, kRightFactorTag});
        const HoroGraph host = build_product(line, right);
        if (host.vertex_count() > 16) continue;
        for (int k = 1; k <= 5; ++k) {
            const AnchoredResult fast = anchored_constant_exact(host, host.root, k);
            CHECK(fast.min_ratio == naive_anchored(host, host.root, k));
        }
    }
}

TEST_CASE("anchored budget guard") {
    const HoroGraph host = build_dl_window(2, 2, 3);
    CHECK_THROWS_AS(anchored_constant_exact(host, host.root, 10, 12, 50), ResourceLimitError);
}

TEST_CASE("cut comparison with no percolative edges is an equality") {
    const TreeParams p{2, 2, 0.7};  // alpha_min = alpha_max: every edge remanent
    const HoroGraph host = build_product(
        sample_window_tree(p, -2, 4, BitSource{4, kLeftFactorTag}),
        sample_window_tree(p, -2, 4, BitSource{4, kRightFactorTag}));
    std::mt19937_64 rng(9);
    std::vector<SubsetSelection> samples;
    for (int i = 0; i < 20; ++i) samples.push_back(random_connected_subset(host, rng, 2 + i % 6));
    const CutCheckReport rep = cut_lower_bound_check(host, samples);
    CHECK(rep.all_pass);
    for (const auto& s : rep.samples) {
        CHECK(s.boundary_full == s.boundary_remanent);
        CHECK(s.components.size() == 1);  // remanent edges keep the sample connected
        CHECK(s.monotone_ok);
        CHECK(s.mediant_ok);
    }
}

TEST_CASE("cut comparison in the line-times-percolation regime") {
    const LeveledTree line = sample_window_tree({1, 1, 0.5}, -3, 6, BitSource{6, kLeftFactorTag});
    const LeveledTree right = sample_window_tree({2, 3, 0.5}, -3, 6, BitSource{6, kRightFactorTag});
    const HoroGraph host = build_product(line, right);

    std::mt19937_64 rng(17);
    std::vector<SubsetSelection> samples;
    for (int i = 0; i < 30; ++i) samples.push_back(random_bfs_ball(host, rng, 3, 12));
    for (int i = 0; i < 30; ++i) samples.push_back(random_connected_subset(host, rng, 2 + i % 10));
    const CutCheckReport rep = cut_lower_bound_check(host, samples);
    CHECK(rep.all_pass);

    // every remanent component is a full binary window piece
    const auto comps = remanent_components(host);
    CHECK(comps.size() > 1);
    for (const auto& comp : comps) CHECK(component_is_dl_piece(host, comp, 1, 2));
    // and it is not a piece of the wrong branching number
    CHECK_FALSE(component_is_dl_piece(host, comps.front(), 1, 3));
}

TEST_CASE("inner and outer boundary sizes bound each other by the degree") {
    const TreeParams p{1, 3, 0.6};
    const HoroGraph host = build_product(
        sample_window_tree(p, -2, 4, BitSource{13, kLeftFactorTag}),
        sample_window_tree(p, -2, 4, BitSource{13, kRightFactorTag}));
    const int degree_bound = 6;  // alpha' + alpha
    std::mt19937_64 rng(2);
    for (int i = 0; i < 40; ++i) {
        const SubsetSelection sel = random_connected_subset(host, rng, 2 + i % 10);
        const auto outer = static_cast<long long>(outer_boundary(host, sel).size());
        const auto inner = static_cast<long long>(inner_boundary(host, sel).size());
        CHECK(outer <= degree_bound * inner);
        CHECK(inner <= degree_bound * outer);
        CHECK((outer == 0) == (inner == 0));
    }
}

TEST_CASE("random subset helpers produce valid connected selections") {
    const HoroGraph host = build_dl_window(2, 2, 3);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
        const SubsetSelection sel = random_connected_subset(host, rng, 8);
        CHECK(sel.members.size() == 8);
        const SubsetSelection ball = random_bfs_ball(host, rng, 2, 30);
        CHECK(!ball.members.empty());
        CHECK(ball.members.size() <= 30);
    }
}
