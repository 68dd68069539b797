#include "horolab/isoperimetry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace horolab {

void SubsetSelection::normalize() {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool SubsetSelection::contains(HoroGraph::VId v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

namespace {

SubsetSelection normalized_copy(const SubsetSelection& sel) {
    if (std::is_sorted(sel.members.begin(), sel.members.end()) &&
        std::adjacent_find(sel.members.begin(), sel.members.end()) == sel.members.end())
        return sel;
    SubsetSelection copy = sel;
    copy.normalize();
    return copy;
}

void check_selection(const HoroGraph& host, const SubsetSelection& sel) {
    for (auto v : sel.members) host.check_vertex(v);
}

int128 checked_pow(long long base, int exp) {
    if (base < 1 || exp < 0) throw ParameterError("checked_pow: need base >= 1, exp >= 0");
    int128 r = 1;
    const int128 limit = int128(1) << 120;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > limit) throw ResourceLimitError("power overflows 128-bit arithmetic");
    }
    return r;
}

}  // namespace

std::vector<HoroGraph::VId> outer_boundary(const HoroGraph& host, const SubsetSelection& sel_in) {
    const SubsetSelection sel = normalized_copy(sel_in);
    check_selection(host, sel);
    std::vector<HoroGraph::VId> out;
    for (auto v : sel.members)
        for (auto n : host.neighbors(v))
            if (!sel.contains(n)) out.push_back(n);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<HoroGraph::VId> inner_boundary(const HoroGraph& host, const SubsetSelection& sel_in) {
    const SubsetSelection sel = normalized_copy(sel_in);
    check_selection(host, sel);
    std::vector<HoroGraph::VId> out;
    for (auto v : sel.members) {
        for (auto n : host.neighbors(v)) {
            if (!sel.contains(n)) {
                out.push_back(v);
                break;
            }
        }
    }
    return out;  // already sorted: members are sorted
}

IsoReport iso_ratio(const HoroGraph& host, const SubsetSelection& sel_in, BoundaryMode mode) {
    const SubsetSelection sel = normalized_copy(sel_in);
    if (sel.members.empty()) throw ParameterError("iso_ratio: empty selection");
    const auto boundary =
        mode == BoundaryMode::outer ? outer_boundary(host, sel) : inner_boundary(host, sel);
    IsoReport rep;
    rep.mode = mode;
    rep.boundary_count = static_cast<long long>(boundary.size());
    rep.volume = static_cast<long long>(sel.members.size());
    rep.ratio = Rational(rep.boundary_count, rep.volume);
    return rep;
}

ExposureCounts exposure_counts(const HoroGraph& host, const SubsetSelection& sel_in) {
    const SubsetSelection sel = normalized_copy(sel_in);
    check_selection(host, sel);
    ExposureCounts counts;
    for (auto v : sel.members) {
        const int level = host.level_of(v);
        bool up = false, down = false;
        for (auto n : host.neighbors(v)) {
            if (sel.contains(n)) continue;
            if (host.level_of(n) > level)
                up = true;
            else
                down = true;
        }
        counts.up += up ? 1 : 0;
        counts.down += down ? 1 : 0;
    }
    return counts;
}

Rational folner_ratio(const LevelCounts& left_counts, const LevelCounts& right_counts, int h) {
    if (h < 0) throw ParameterError("folner_ratio: h must be >= 0");
    int128 volume = 0;
    for (int j = -h; j <= h; ++j) {
        const long long lx = left_counts.at(-j);
        const long long rx = right_counts.at(j);
        if (lx == 0 || rx == 0)
            throw ParameterError("folner_ratio: extinct level " + std::to_string(j) +
                                 " gives zero volume");
        volume += static_cast<int128>(lx) * rx;
    }
    const int128 numerator =
        static_cast<int128>(left_counts.at(h)) + static_cast<int128>(right_counts.at(h));
    return Rational(numerator, volume);
}

Rational folner_ratio_regular(int beta, int h) {
    if (beta < 1 || h < 0) throw ParameterError("folner_ratio_regular: need beta >= 1, h >= 0");
    const int128 top = checked_pow(beta, 2 * h);
    return Rational(2 * top, (2 * static_cast<int128>(h) + 1) * top);
}

CrosscheckReport window_boundary_crosscheck(const LeveledTree& left, const LeveledTree& right,
                                            int h, const BitSource& left_bits,
                                            const BitSource& right_bits) {
    if (h < 0) throw ParameterError("window_boundary_crosscheck: h must be >= 0");
    if (left.root_level != -h || left.height != 2 * h || right.root_level != -h ||
        right.height != 2 * h)
        throw ParameterError("window_boundary_crosscheck: windows must span levels -h..h");
    if (left.params.alpha_min < 1 || right.params.alpha_min < 1)
        throw ParameterError("window_boundary_crosscheck: needs alpha_min >= 1 on both factors");

    const LevelCounts lx = level_counts(left);
    const LevelCounts rx = level_counts(right);

    const LeveledTree left_host = attach_parent_stub(extend_window(left, 1, left_bits));
    const LeveledTree right_host = attach_parent_stub(extend_window(right, 1, right_bits));
    const HoroGraph host = build_product(left_host, right_host);

    SubsetSelection window;
    for (int l = -h; l <= h; ++l) {
        const long long ls = host.left_level_size(l);
        const long long rs = host.right_level_size(l);
        for (int li = 0; li < ls; ++li)
            for (int ri = 0; ri < rs; ++ri)
                window.members.push_back(host.encode(HoroVertex{l, li, ri}));
    }
    window.normalize();

    CrosscheckReport rep;
    rep.expected = lx.at(h) + rx.at(h);
    const ExposureCounts counts = exposure_counts(host, window);
    rep.up = counts.up;
    rep.down = counts.down;
    rep.window_volume = static_cast<long long>(window.members.size());
    int128 pair_volume = 0;
    for (int j = -h; j <= h; ++j) pair_volume += static_cast<int128>(lx.at(-j)) * rx.at(j);
    rep.pair_volume = static_cast<long long>(pair_volume);
    rep.pass = rep.up + rep.down == rep.expected && rep.window_volume == rep.pair_volume;
    return rep;
}

SubsetSelection tetraeder_subset(const HoroGraph& host, VertexId apex_right, VertexId apex_left,
                                 int N) {
    if (N < 0) throw ParameterError("tetraeder_subset: N must be >= 0");
    host.right.check_vertex(apex_right);
    host.left.check_vertex(apex_left);
    const int n = apex_right.level;                 // product level of the right apex
    const int left_product_level = -apex_left.level;
    if (left_product_level != n + N)
        throw ParameterError("tetraeder_subset: apex levels must span exactly N product levels");
    if (n < host.level_min || n + N > host.level_max)
        throw ParameterError("tetraeder_subset: span outside the host window");

    SubsetSelection sel;
    for (int l = n; l <= n + N; ++l) {
        const auto [rb, re] = descendant_range(host.right, apex_right, l);
        const auto [lb, le] = descendant_range(host.left, apex_left, -l);
        for (int li = lb; li < le; ++li)
            for (int ri = rb; ri < re; ++ri)
                sel.members.push_back(host.encode(HoroVertex{l, li, ri}));
    }
    sel.normalize();
    if (sel.members.empty()) throw ParameterError("tetraeder_subset: empty selection");
    return sel;
}

IsoReport tetraeder_report(const HoroGraph& host, const SubsetSelection& sel) {
    const ExposureCounts counts = exposure_counts(host, sel);
    IsoReport rep;
    rep.mode = BoundaryMode::inner;
    rep.boundary_count = counts.up + counts.down;
    rep.volume = static_cast<long long>(normalized_copy(sel).members.size());
    if (rep.volume == 0) throw ParameterError("tetraeder_report: empty selection");
    rep.ratio = Rational(rep.boundary_count, rep.volume);
    return rep;
}

Rational tetraeder_ratio_regular(int beta, int N) {
    if (beta < 1 || N < 0) throw ParameterError("tetraeder_ratio_regular: need beta >= 1, N >= 0");
    const int128 layer = checked_pow(beta, N);
    return Rational(2 * layer, (static_cast<int128>(N) + 1) * layer);
}

TetraederInstance build_regular_tetraeder(int beta, int N, std::size_t max_vertices) {
    if (beta < 1 || N < 0) throw ParameterError("build_regular_tetraeder: need beta >= 1, N >= 0");
    const int n = -(N + 1) / 2;  // bottom apex level, span roughly centered
    const int h = std::max(1 - n, n + N + 1);
    TetraederInstance inst{build_dl_window(beta, beta, h, max_vertices), {}};
    inst.subset = tetraeder_subset(inst.host, VertexId{n, 0}, VertexId{-(n + N), 0}, N);
    return inst;
}

namespace {

struct AnchoredEnumerator {
    const HoroGraph& host;
    int n_max;
    long long budget;
    long long visited = 0;
    AnchoredResult best;
    bool have_best = false;

    void consider(const std::vector<HoroGraph::VId>& subset) {
        if (++visited > budget)
            throw ResourceLimitError("anchored enumeration budget (" + std::to_string(budget) +
                                     ") exceeded");
        SubsetSelection sel;
        sel.members = subset;
        sel.normalize();
        const long long boundary = static_cast<long long>(outer_boundary(host, sel).size());
        const Rational ratio(boundary, static_cast<long long>(sel.members.size()));
        if (!have_best || ratio < best.min_ratio ||
            (ratio == best.min_ratio && sel.members < best.witness)) {
            best.min_ratio = ratio;
            best.witness = sel.members;
            have_best = true;
        }
    }

    // Duplicate-free connected-subset enumeration: each loop iteration claims
    // the next extension vertex and every later branch excludes it.
    void expand(const std::vector<HoroGraph::VId>& subset, std::vector<HoroGraph::VId> ext,
                std::vector<HoroGraph::VId> excluded) {
        consider(subset);
        if (static_cast<int>(subset.size()) == n_max) return;
        while (!ext.empty()) {
            const auto v = ext.front();
            ext.erase(ext.begin());
            std::vector<HoroGraph::VId> child_ext = ext;
            for (auto n : host.neighbors(v)) {
                if (std::find(subset.begin(), subset.end(), n) != subset.end()) continue;
                if (n == v) continue;
                if (std::find(excluded.begin(), excluded.end(), n) != excluded.end()) continue;
                if (std::find(child_ext.begin(), child_ext.end(), n) != child_ext.end()) continue;
                child_ext.push_back(n);
            }
            std::vector<HoroGraph::VId> child_subset = subset;
            child_subset.push_back(v);
            expand(child_subset, std::move(child_ext), excluded);
            excluded.push_back(v);
        }
    }
};

}  // namespace

AnchoredResult anchored_constant_exact(const HoroGraph& host, HoroGraph::VId root, int n_max,
                                       int size_cap, long long budget) {
    host.check_vertex(root);
    if (n_max < 1) throw ParameterError("anchored_constant_exact: n_max must be >= 1");
    if (n_max > size_cap)
        throw ParameterError("anchored_constant_exact: n_max exceeds the size cap (" +
                             std::to_string(size_cap) + ")");
    AnchoredEnumerator en{host, n_max, budget, 0, {}, false};
    std::vector<HoroGraph::VId> ext = host.neighbors(root);
    std::sort(ext.begin(), ext.end());
    ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
    en.expand({root}, std::move(ext), {});
    en.best.subsets_enumerated = en.visited;
    return en.best;
}

namespace {

std::vector<HoroGraph::VId> remanent_neighbors(const HoroGraph& host, HoroGraph::VId v) {
    std::vector<HoroGraph::VId> out;
    for (auto [n, remanent] : host.neighbors_with_kind(v))
        if (remanent) out.push_back(n);
    return out;
}

}  // namespace

CutCheckReport cut_lower_bound_check(const HoroGraph& host,
                                     const std::vector<SubsetSelection>& samples) {
    CutCheckReport report;
    report.all_pass = true;
    for (const auto& raw : samples) {
        const SubsetSelection sel = normalized_copy(raw);
        if (sel.members.empty()) throw ParameterError("cut_lower_bound_check: empty sample");
        check_selection(host, sel);
        CutSampleReport s;
        s.volume = static_cast<long long>(sel.members.size());
        s.boundary_full = static_cast<long long>(outer_boundary(host, sel).size());

        std::vector<HoroGraph::VId> rem_boundary;
        for (auto v : sel.members)
            for (auto n : remanent_neighbors(host, v))
                if (!sel.contains(n)) rem_boundary.push_back(n);
        std::sort(rem_boundary.begin(), rem_boundary.end());
        rem_boundary.erase(std::unique(rem_boundary.begin(), rem_boundary.end()),
                           rem_boundary.end());
        s.boundary_remanent = static_cast<long long>(rem_boundary.size());
        s.monotone_ok = s.boundary_full >= s.boundary_remanent;

        // components of the selection under remanent edges between members
        std::vector<char> seen(sel.members.size(), 0);
        long long boundary_sum = 0;
        bool have_min = false;
        Rational min_ratio;
        for (std::size_t i = 0; i < sel.members.size(); ++i) {
            if (seen[i]) continue;
            std::vector<HoroGraph::VId> comp;
            std::deque<std::size_t> queue{i};
            seen[i] = 1;
            while (!queue.empty()) {
                const auto ci = queue.front();
                queue.pop_front();
                comp.push_back(sel.members[ci]);
                for (auto n : remanent_neighbors(host, sel.members[ci])) {
                    const auto it =
                        std::lower_bound(sel.members.begin(), sel.members.end(), n);
                    if (it == sel.members.end() || *it != n) continue;
                    const auto ni = static_cast<std::size_t>(it - sel.members.begin());
                    if (!seen[ni]) {
                        seen[ni] = 1;
                        queue.push_back(ni);
                    }
                }
            }
            std::sort(comp.begin(), comp.end());
            std::vector<HoroGraph::VId> comp_boundary;
            for (auto v : comp)
                for (auto n : remanent_neighbors(host, v))
                    if (!std::binary_search(comp.begin(), comp.end(), n))
                        comp_boundary.push_back(n);
            std::sort(comp_boundary.begin(), comp_boundary.end());
            comp_boundary.erase(std::unique(comp_boundary.begin(), comp_boundary.end()),
                                comp_boundary.end());
            CutSampleReport::Component c;
            c.size = static_cast<long long>(comp.size());
            c.boundary = static_cast<long long>(comp_boundary.size());
            c.ratio = Rational(c.boundary, c.size);
            boundary_sum += c.boundary;
            if (!have_min || c.ratio < min_ratio) {
                min_ratio = c.ratio;
                have_min = true;
            }
            s.components.push_back(c);
        }
        s.mediant_ok = !have_min || Rational(boundary_sum, s.volume) >= min_ratio;
        report.all_pass = report.all_pass && s.monotone_ok && s.mediant_ok;
        report.samples.push_back(std::move(s));
    }
    return report;
}

SubsetSelection random_connected_subset(const HoroGraph& host, std::mt19937_64& rng,
                                        int target_size) {
    if (target_size < 1) throw ParameterError("random_connected_subset: size must be >= 1");
    const auto n = host.vertex_count();
    if (n == 0) throw ParameterError("random_connected_subset: empty host");
    std::uniform_int_distribution<HoroGraph::VId> pick(0, n - 1);
    SubsetSelection sel;
    sel.members.push_back(pick(rng));
    std::vector<HoroGraph::VId> frontier = host.neighbors(sel.members[0]);
    while (static_cast<int>(sel.members.size()) < target_size && !frontier.empty()) {
        std::uniform_int_distribution<std::size_t> fpick(0, frontier.size() - 1);
        const auto v = frontier[fpick(rng)];
        frontier.erase(std::remove(frontier.begin(), frontier.end(), v), frontier.end());
        if (std::find(sel.members.begin(), sel.members.end(), v) != sel.members.end()) continue;
        sel.members.push_back(v);
        for (auto nb : host.neighbors(v))
            if (std::find(sel.members.begin(), sel.members.end(), nb) == sel.members.end())
                frontier.push_back(nb);
    }
    sel.normalize();
    return sel;
}

SubsetSelection random_bfs_ball(const HoroGraph& host, std::mt19937_64& rng, int max_radius,
                                int max_size) {
    if (max_radius < 0 || max_size < 1)
        throw ParameterError("random_bfs_ball: need max_radius >= 0, max_size >= 1");
    const auto n = host.vertex_count();
    if (n == 0) throw ParameterError("random_bfs_ball: empty host");
    std::uniform_int_distribution<HoroGraph::VId> pick(0, n - 1);
    const auto center = pick(rng);
    SubsetSelection sel;
    std::map<HoroGraph::VId, int> dist{{center, 0}};
    std::deque<HoroGraph::VId> queue{center};
    while (!queue.empty() && static_cast<int>(dist.size()) < max_size) {
        const auto v = queue.front();
        queue.pop_front();
        if (dist[v] == max_radius) continue;
        for (auto nb : host.neighbors(v)) {
            if (dist.count(nb)) continue;
            dist[nb] = dist[v] + 1;
            queue.push_back(nb);
            if (static_cast<int>(dist.size()) >= max_size) break;
        }
    }
    for (const auto& [v, _] : dist) sel.members.push_back(v);
    sel.normalize();
    return sel;
}

std::vector<std::vector<HoroGraph::VId>> remanent_components(const HoroGraph& host) {
    const auto n = host.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<HoroGraph::VId>> comps;
    for (HoroGraph::VId s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<HoroGraph::VId> comp;
        std::deque<HoroGraph::VId> queue{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!queue.empty()) {
            const auto v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (auto nb : remanent_neighbors(host, v)) {
                if (!seen[static_cast<std::size_t>(nb)]) {
                    seen[static_cast<std::size_t>(nb)] = 1;
                    queue.push_back(nb);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

namespace {

// AHU canonical encoding of a rooted tree given by an adjacency map.
std::string ahu_encode(const std::map<HoroGraph::VId, std::vector<HoroGraph::VId>>& adj,
                       HoroGraph::VId v, HoroGraph::VId parent) {
    std::vector<std::string> kids;
    for (auto n : adj.at(v))
        if (n != parent) kids.push_back(ahu_encode(adj, n, v));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (const auto& k : kids) out += k;
    out += ")";
    return out;
}

struct PieceShape {
    bool is_tree = false;
    std::string canonical;                   // AHU form when a tree
    std::vector<long long> level_sizes;      // per level from the lowest
    std::vector<std::vector<int>> degrees;   // sorted degree list per level
    long long edge_count = 0;

    bool operator==(const PieceShape&) const = default;
};

PieceShape shape_of(const HoroGraph& host, const std::vector<HoroGraph::VId>& comp,
                    bool remanent_only) {
    PieceShape shape;
    std::map<HoroGraph::VId, std::vector<HoroGraph::VId>> adj;
    int lmin = host.level_max, lmax = host.level_min;
    for (auto v : comp) {
        lmin = std::min(lmin, host.level_of(v));
        lmax = std::max(lmax, host.level_of(v));
        auto& entry = adj[v];
        for (auto [n, remanent] : host.neighbors_with_kind(v)) {
            if (remanent_only && !remanent) continue;
            if (std::binary_search(comp.begin(), comp.end(), n)) entry.push_back(n);
        }
        std::sort(entry.begin(), entry.end());
        shape.edge_count += static_cast<long long>(entry.size());
    }
    shape.edge_count /= 2;
    shape.level_sizes.assign(lmax - lmin + 1, 0);
    shape.degrees.assign(lmax - lmin + 1, {});
    std::vector<HoroGraph::VId> min_level_vertices;
    for (auto v : comp) {
        const int l = host.level_of(v) - lmin;
        shape.level_sizes[l] += 1;
        shape.degrees[l].push_back(static_cast<int>(adj[v].size()));
        if (l == 0) min_level_vertices.push_back(v);
    }
    for (auto& d : shape.degrees) std::sort(d.begin(), d.end());
    shape.is_tree = shape.edge_count == static_cast<long long>(comp.size()) - 1 &&
                    min_level_vertices.size() == 1;
    if (shape.is_tree) {
        // connectivity: a tree encoding from the unique apex reaches all
        // vertices iff the component is connected; verify by size
        std::deque<HoroGraph::VId> queue{min_level_vertices[0]};
        std::map<HoroGraph::VId, char> seen{{min_level_vertices[0], 1}};
        while (!queue.empty()) {
            const auto v = queue.front();
            queue.pop_front();
            for (auto n : adj[v])
                if (!seen.count(n)) {
                    seen[n] = 1;
                    queue.push_back(n);
                }
        }
        shape.is_tree = seen.size() == comp.size();
        if (shape.is_tree) shape.canonical = ahu_encode(adj, min_level_vertices[0], -1);
    }
    return shape;
}

}  // namespace

bool component_is_dl_piece(const HoroGraph& host, const std::vector<HoroGraph::VId>& component,
                           int alpha_left, int alpha_right) {
    if (component.empty()) return false;
    std::vector<HoroGraph::VId> comp = component;
    std::sort(comp.begin(), comp.end());
    int lmin = host.level_max, lmax = host.level_min;
    for (auto v : comp) {
        lmin = std::min(lmin, host.level_of(v));
        lmax = std::max(lmax, host.level_of(v));
    }
    const int span = lmax - lmin;
    const BitSource bits{0, 0};
    const LeveledTree ref_left =
        sample_window_tree({alpha_left, alpha_left, 1.0}, -lmax, span, bits);
    const LeveledTree ref_right =
        sample_window_tree({alpha_right, alpha_right, 1.0}, lmin, span, bits);
    const HoroGraph ref = build_product(ref_left, ref_right);
    std::vector<HoroGraph::VId> ref_all(static_cast<std::size_t>(ref.vertex_count()));
    std::iota(ref_all.begin(), ref_all.end(), 0);

    const PieceShape a = shape_of(host, comp, /*remanent_only=*/true);
    const PieceShape b = shape_of(ref, ref_all, /*remanent_only=*/false);
    if (a.is_tree && b.is_tree) return a.canonical == b.canonical;
    return a.level_sizes == b.level_sizes && a.degrees == b.degrees &&
           a.edge_count == b.edge_count;
}

}  // namespace horolab
