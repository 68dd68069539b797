#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "horolab/horoproduct.hpp"
#include "horolab/isoperimetry.hpp"
#include "horolab/leveled_tree.hpp"
#include "horolab/statistics.hpp"

namespace horolab {

using ojson = nlohmann::ordered_json;

// Child-index path from the window root, "2.1.3"; the root itself is "-".
std::string path_string(const LeveledTree& tree, VertexId v);

// Canonical tree serialization: root_level, height, and per-level arrays of
// (parent index, child index, mark flag). Byte-stable across runs.
ojson tree_to_json(const LeveledTree& tree);
std::string canonical_tree_json(const LeveledTree& tree);

ojson params_to_json(const TreeParams& params);

// Emits num/den as JSON integers when they fit, else as decimal strings.
ojson rational_to_json(const Rational& r);

// Edge list, one row per undirected edge (emitted from its lower level):
// level,left_path,right_path,neighbor_left_path,neighbor_right_path,edge_kind
void write_graph_edge_csv(const HoroGraph& graph, std::ostream& out);

ojson graph_adjacency_json(const HoroGraph& graph);

ojson iso_report_json(const IsoReport& report);
ojson iso_report_json(const IsoReport& report, const HoroGraph& host,
                      const std::vector<HoroGraph::VId>& witness);

// Deterministic per-h window-ratio table:
// h,X_left_top,X_right_top,volume,ratio_num,ratio_den
void write_folner_table_csv(const std::vector<FolnerTableRow>& rows, std::ostream& out);

// Experiment statistics:
// h,trials,discarded,median_ratio_num,median_ratio_den,mean,q10,q90,median_scaled
void write_folner_series_csv(const FolnerSeries& series, std::ostream& out);

ojson folner_series_json(const FolnerSeries& series);

ojson martingale_stats_json(const MartingaleStats& stats);

ojson cut_check_json(const CutCheckReport& report);

std::string format_double(double v);

}  // namespace horolab
