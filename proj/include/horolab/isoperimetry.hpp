#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "horolab/horoproduct.hpp"
#include "horolab/rational.hpp"

namespace horolab {

inline constexpr int kDefaultAnchoredSizeCap = 12;
inline constexpr long long kDefaultAnchoredBudget = 50'000'000;

// Vertex subset of a host product graph; members sorted and unique.
struct SubsetSelection {
    std::vector<HoroGraph::VId> members;

    void normalize();
    bool contains(HoroGraph::VId v) const;
};

enum class BoundaryMode { outer, inner };

// Exact boundary/volume ratio of a subset within its host.
struct IsoReport {
    BoundaryMode mode = BoundaryMode::outer;
    long long boundary_count = 0;
    long long volume = 0;
    Rational ratio;
};

// Vertices outside the selection adjacent to some member.
std::vector<HoroGraph::VId> outer_boundary(const HoroGraph& host, const SubsetSelection& sel);

// Members adjacent to at least one non-member.
std::vector<HoroGraph::VId> inner_boundary(const HoroGraph& host, const SubsetSelection& sel);

IsoReport iso_ratio(const HoroGraph& host, const SubsetSelection& sel, BoundaryMode mode);

// Members exposed through an up-edge / down-edge to a non-member. A member
// counts once per direction, so `up + down` equals the inner boundary size
// whenever no member is exposed both ways, and matches the two-sided
// extreme-level counts (X'_top + X_bottom) even for single-level subsets.
struct ExposureCounts {
    long long up = 0;
    long long down = 0;
};
ExposureCounts exposure_counts(const HoroGraph& host, const SubsetSelection& sel);

// Window isoperimetric ratio (X'_h + X_h) / sum_{j=-h..h} X'_{-j} X_j, where
// X' is indexed by the left factor's own level so that product level l pairs
// X'_{-l} with X_l.
Rational folner_ratio(const LevelCounts& left_counts, const LevelCounts& right_counts, int h);

// Deterministic beta-regular window ratio 2 beta^{2h} / ((2h+1) beta^{2h});
// closed-form counts, no graph construction.
Rational folner_ratio_regular(int beta, int h);

struct FolnerTableRow {
    int h = 0;
    long long x_left_top = 0;
    long long x_right_top = 0;
    long long volume = 0;
    Rational ratio;
};

struct CrosscheckReport {
    long long expected = 0;  // X'_h + X_h
    long long up = 0;
    long long down = 0;
    long long window_volume = 0;
    long long pair_volume = 0;  // sum of paired level products
    bool pass = false;
};

// Embeds the h-window into a host that extends one level past both extremes
// (child-direction extension plus a parent stub below each root) and verifies
// that the window's exposure counts equal X'_h + X_h and its volume equals
// the paired-count sum.
CrosscheckReport window_boundary_crosscheck(const LeveledTree& left, const LeveledTree& right,
                                            int h, const BitSource& left_bits,
                                            const BitSource& right_bits);

// Diamond subset spanned by the descendants of one apex per factor over N
// levels: pairs <u',u> with apex_right ancestor-or-equal of u and apex_left
// ancestor-or-equal of u'. apex_right sits at product level n, apex_left at
// product level n+N.
SubsetSelection tetraeder_subset(const HoroGraph& host, VertexId apex_right, VertexId apex_left,
                                 int N);

// Tetraeder ratio with the two-sided exposure numerator; equals the inner
// boundary ratio for N >= 1 and 2/1 for the single-vertex N = 0 case.
IsoReport tetraeder_report(const HoroGraph& host, const SubsetSelection& sel);

// Closed-form tetraeder ratio (top + bottom counts over per-level products)
// in a beta-regular region: 2 beta^N / ((N+1) beta^N).
Rational tetraeder_ratio_regular(int beta, int N);

// Deterministic beta-regular host window together with an interior tetraeder
// spanning N levels, one level of headroom past both extremes.
struct TetraederInstance {
    HoroGraph host;
    SubsetSelection subset;
};
TetraederInstance build_regular_tetraeder(int beta, int N,
                                          std::size_t max_vertices = kDefaultProductVertexCap);

struct AnchoredResult {
    Rational min_ratio;
    std::vector<HoroGraph::VId> witness;  // lexicographically least argmin
    long long subsets_enumerated = 0;
};

// Exhaustive minimum of the outer-mode ratio over connected subsets
// containing `root` of size <= n_max. Duplicate-free enumeration grows
// subsets from the root with an exclusion frontier.
AnchoredResult anchored_constant_exact(const HoroGraph& host, HoroGraph::VId root, int n_max,
                                       int size_cap = kDefaultAnchoredSizeCap,
                                       long long budget = kDefaultAnchoredBudget);

struct CutSampleReport {
    long long volume = 0;
    long long boundary_full = 0;      // |∂_H W|
    long long boundary_remanent = 0;  // |∂_{H \ E_p} W|
    struct Component {
        long long size = 0;
        long long boundary = 0;  // in H \ E_p
        Rational ratio;
    };
    std::vector<Component> components;
    bool monotone_ok = false;  // boundary_full >= boundary_remanent
    bool mediant_ok = false;   // pooled ratio >= min component ratio
};

struct CutCheckReport {
    std::vector<CutSampleReport> samples;
    bool all_pass = false;
};

// Edge-removal comparison: for each sampled subset W, checks
// |∂_H W|/|W| >= |∂_{H\E_p} W|/|W|, decomposes W into remanent-edge
// components, and checks the mediant inequality against the smallest
// component ratio.
CutCheckReport cut_lower_bound_check(const HoroGraph& host,
                                     const std::vector<SubsetSelection>& samples);

// Connected subset of target size grown by uniform frontier picks.
SubsetSelection random_connected_subset(const HoroGraph& host, std::mt19937_64& rng,
                                        int target_size);

// BFS ball around a random center, truncated at max_size vertices.
SubsetSelection random_bfs_ball(const HoroGraph& host, std::mt19937_64& rng, int max_radius,
                                int max_size);

// Components of the host under remanent edges only, each sorted; component
// list sorted by first vertex.
std::vector<std::vector<HoroGraph::VId>> remanent_components(const HoroGraph& host);

// True iff the remanent-edge subgraph induced on `component` is
// graph-isomorphic to the deterministic DL window piece with the given
// branching numbers on the component's level span. Exact for tree-shaped
// pieces (left factor a line), which is the regime where it is used.
bool component_is_dl_piece(const HoroGraph& host, const std::vector<HoroGraph::VId>& component,
                           int alpha_left, int alpha_right);

}  // namespace horolab
