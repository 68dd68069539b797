#include "horolab/io.hpp"

#include <cstdio>
#include <ostream>

namespace horolab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string path_string(const LeveledTree& tree, VertexId v) {
    const auto path = tree.path_of(v);
    if (path.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(path[i]);
    }
    return out;
}

ojson tree_to_json(const LeveledTree& tree) {
    ojson j;
    j["root_level"] = tree.root_level;
    j["height"] = tree.height;
    ojson levels = ojson::array();
    for (int d = 0; d <= tree.height; ++d) {
        ojson level = ojson::array();
        for (const auto& node : tree.levels[d]) {
            const int mark = node.child_index > tree.params.alpha_min ? 1 : 0;
            level.push_back(ojson::array({node.parent, node.child_index, mark}));
        }
        levels.push_back(std::move(level));
    }
    j["levels"] = std::move(levels);
    return j;
}

std::string canonical_tree_json(const LeveledTree& tree) { return tree_to_json(tree).dump(); }

ojson params_to_json(const TreeParams& params) {
    ojson j;
    j["alpha_min"] = params.alpha_min;
    j["alpha_max"] = params.alpha_max;
    j["retention"] = params.retention;
    return j;
}

ojson rational_to_json(const Rational& r) {
    const auto emit = [](int128 v) -> ojson {
        if (v <= static_cast<int128>(INT64_MAX)) return static_cast<std::int64_t>(v);
        return int128_to_string(v);
    };
    ojson j;
    j["num"] = emit(r.num());
    j["den"] = emit(r.den());
    return j;
}

void write_graph_edge_csv(const HoroGraph& graph, std::ostream& out) {
    out << "level,left_path,right_path,neighbor_left_path,neighbor_right_path,edge_kind\n";
    for (HoroGraph::VId v = 0; v < graph.vertex_count(); ++v) {
        const int level = graph.level_of(v);
        if (level == graph.level_max) continue;
        for (auto [n, remanent] : graph.neighbors_with_kind(v)) {
            if (graph.level_of(n) != level + 1) continue;
            out << level << ',' << path_string(graph.left, graph.left_vertex(v)) << ','
                << path_string(graph.right, graph.right_vertex(v)) << ','
                << path_string(graph.left, graph.left_vertex(n)) << ','
                << path_string(graph.right, graph.right_vertex(n)) << ','
                << (remanent ? "remanent" : "percolative") << '\n';
        }
    }
}

ojson graph_adjacency_json(const HoroGraph& graph) {
    ojson j;
    j["level_min"] = graph.level_min;
    j["level_max"] = graph.level_max;
    j["root"] = graph.root;
    j["vertex_count"] = graph.vertex_count();
    ojson vertices = ojson::array();
    ojson adjacency = ojson::array();
    for (HoroGraph::VId v = 0; v < graph.vertex_count(); ++v) {
        ojson vj;
        vj["id"] = v;
        vj["level"] = graph.level_of(v);
        vj["left_path"] = path_string(graph.left, graph.left_vertex(v));
        vj["right_path"] = path_string(graph.right, graph.right_vertex(v));
        vertices.push_back(std::move(vj));
        ojson nbrs = ojson::array();
        for (auto [n, remanent] : graph.neighbors_with_kind(v))
            nbrs.push_back(ojson::array({n, remanent ? "remanent" : "percolative"}));
        adjacency.push_back(std::move(nbrs));
    }
    j["vertices"] = std::move(vertices);
    j["adjacency"] = std::move(adjacency);
    return j;
}

ojson iso_report_json(const IsoReport& report) {
    ojson j;
    j["mode"] = report.mode == BoundaryMode::outer ? "outer" : "inner";
    j["boundary"] = report.boundary_count;
    j["volume"] = report.volume;
    j["ratio_num"] = rational_to_json(report.ratio)["num"];
    j["ratio_den"] = rational_to_json(report.ratio)["den"];
    return j;
}

ojson iso_report_json(const IsoReport& report, const HoroGraph& host,
                      const std::vector<HoroGraph::VId>& witness) {
    ojson j = iso_report_json(report);
    ojson w = ojson::array();
    for (auto v : witness) {
        ojson vj;
        vj["level"] = host.level_of(v);
        vj["left_path"] = path_string(host.left, host.left_vertex(v));
        vj["right_path"] = path_string(host.right, host.right_vertex(v));
        w.push_back(std::move(vj));
    }
    j["witness"] = std::move(w);
    return j;
}

void write_folner_table_csv(const std::vector<FolnerTableRow>& rows, std::ostream& out) {
    out << "h,X_left_top,X_right_top,volume,ratio_num,ratio_den\n";
    for (const auto& row : rows) {
        out << row.h << ',' << row.x_left_top << ',' << row.x_right_top << ',' << row.volume
            << ',' << int128_to_string(row.ratio.num()) << ','
            << int128_to_string(row.ratio.den()) << '\n';
    }
}

void write_folner_series_csv(const FolnerSeries& series, std::ostream& out) {
    out << "h,trials,discarded,median_ratio_num,median_ratio_den,mean,q10,q90,median_scaled\n";
    for (const auto& row : series.rows) {
        out << row.h << ',' << row.trials << ',' << row.discarded << ','
            << int128_to_string(row.median.num()) << ',' << int128_to_string(row.median.den())
            << ',' << format_double(row.mean) << ',' << format_double(row.q10) << ','
            << format_double(row.q90) << ',' << format_double(row.median_scaled.to_double())
            << '\n';
    }
}

ojson folner_series_json(const FolnerSeries& series) {
    ojson j;
    j["left"] = params_to_json(series.left);
    j["right"] = params_to_json(series.right);
    j["h_lo"] = series.h_lo;
    j["h_hi"] = series.h_hi;
    j["trials_requested"] = series.trials_requested;
    j["seed"] = series.seed;
    j["exploratory"] = series.exploratory;
    ojson rows = ojson::array();
    for (const auto& row : series.rows) {
        ojson rj;
        rj["h"] = row.h;
        rj["trials"] = row.trials;
        rj["discarded"] = row.discarded;
        rj["median"] = rational_to_json(row.median);
        rj["mean"] = row.mean;
        rj["q10"] = row.q10;
        rj["q90"] = row.q90;
        rj["median_scaled"] = rational_to_json(row.median_scaled);
        rj["truncated"] = row.truncated;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    return j;
}

ojson martingale_stats_json(const MartingaleStats& stats) {
    ojson j;
    j["z"] = stats.z;
    j["trials"] = stats.trials;
    j["discarded"] = stats.discarded;
    ojson incs = ojson::array();
    for (const auto& lvl : stats.increments) {
        ojson lj;
        lj["level"] = lvl.level;
        lj["mean_increment"] = lvl.mean_increment;
        lj["std_error"] = lvl.std_error;
        incs.push_back(std::move(lj));
    }
    j["increments"] = std::move(incs);
    j["sup_inv_y"] = {{"q50", stats.sup_inv_q50},
                      {"q90", stats.sup_inv_q90},
                      {"q99", stats.sup_inv_q99},
                      {"max", stats.sup_inv_max}};
    return j;
}

ojson cut_check_json(const CutCheckReport& report) {
    ojson j;
    j["all_pass"] = report.all_pass;
    ojson samples = ojson::array();
    for (const auto& s : report.samples) {
        ojson sj;
        sj["volume"] = s.volume;
        sj["boundary_full"] = s.boundary_full;
        sj["boundary_remanent"] = s.boundary_remanent;
        sj["monotone_ok"] = s.monotone_ok;
        sj["mediant_ok"] = s.mediant_ok;
        ojson comps = ojson::array();
        for (const auto& c : s.components) {
            ojson cj;
            cj["size"] = c.size;
            cj["boundary"] = c.boundary;
            cj["ratio"] = rational_to_json(c.ratio);
            comps.push_back(std::move(cj));
        }
        sj["components"] = std::move(comps);
        samples.push_back(std::move(sj));
    }
    j["samples"] = std::move(samples);
    return j;
}

}  // namespace horolab
