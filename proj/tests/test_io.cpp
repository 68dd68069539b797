#include "doctest.h"

#include <sstream>

#include "horolab/io.hpp"

using namespace horolab;

TEST_CASE("canonical tree serialization is byte-stable") {
    const TreeParams p{1, 3, 0.5};
    const LeveledTree a = sample_window_tree(p, -1, 2, BitSource{42, 0});
    const LeveledTree b = sample_window_tree(p, -1, 2, BitSource{42, 0});
    CHECK(canonical_tree_json(a) == canonical_tree_json(b));
    const ojson j = tree_to_json(a);
    CHECK(j["root_level"] == -1);
    CHECK(j["height"] == 2);
    CHECK(j["levels"].size() == 3);
    CHECK(j["levels"][0].size() == 1);
}

TEST_CASE("canonical serialization golden value") {
    // frozen first-run serialization of a fixed window; any change to the
    // sampler bits or the schema must show up here
    const LeveledTree tree = sample_window_tree({1, 2, 0.5}, 0, 2, BitSource{7, 0});
    CHECK(canonical_tree_json(tree) ==
          "{\"root_level\":0,\"height\":2,\"levels\":[[[-1,0,0]],[[0,1,0],[0,2,1]],"
          "[[0,1,0],[1,1,0],[1,2,1]]]}");
}

TEST_CASE("path strings") {
    const LeveledTree tree = sample_window_tree({2, 2, 1.0}, 0, 2, BitSource{0, 0});
    CHECK(path_string(tree, VertexId{0, 0}) == "-");
    CHECK(path_string(tree, VertexId{1, 1}) == "2");
    CHECK(path_string(tree, VertexId{2, 3}) == "2.2");
}

TEST_CASE("edge csv lists each edge once with its kind") {
    const HoroGraph g = build_dl_window(1, 1, 1);  // path of 3 vertices
    std::ostringstream out;
    write_graph_edge_csv(g, out);
    CHECK(out.str() ==
          "level,left_path,right_path,neighbor_left_path,neighbor_right_path,edge_kind\n"
          "-1,1.1,-,1,1,remanent\n"
          "0,1,1,-,1.1,remanent\n");
}

TEST_CASE("edge csv marks percolative edges") {
    const LeveledTree line = sample_window_tree({1, 1, 1.0}, -1, 2, BitSource{0, kLeftFactorTag});
    const LeveledTree right = sample_window_tree({1, 2, 1.0}, -1, 2, BitSource{0, kRightFactorTag});
    const HoroGraph g = build_product(line, right);
    std::ostringstream out;
    write_graph_edge_csv(g, out);
    CHECK(out.str().find("percolative") != std::string::npos);
    CHECK(out.str().find("remanent") != std::string::npos);
}

TEST_CASE("rational json uses integers while they fit") {
    const ojson small = rational_to_json(Rational(2, 5));
    CHECK(small["num"] == 2);
    CHECK(small["den"] == 5);
    const int128 huge = static_cast<int128>(1'000'000'000'000'000LL) * 1'000'000'000'000LL;
    const ojson big = rational_to_json(Rational(1, huge));
    CHECK(big["den"] == "1000000000000000000000000000");
}

TEST_CASE("folner series csv layout") {
    FolnerSeries series;
    FolnerRow row;
    row.h = 3;
    row.trials = 10;
    row.discarded = 0;
    row.median = Rational(2, 7);
    row.mean = 0.5;
    row.q10 = 0.25;
    row.q90 = 0.75;
    row.median_scaled = Rational(2, 1);
    series.rows.push_back(row);
    std::ostringstream out;
    write_folner_series_csv(series, out);
    CHECK(out.str() ==
          "h,trials,discarded,median_ratio_num,median_ratio_den,mean,q10,q90,median_scaled\n"
          "3,10,0,2,7,0.5,0.25,0.75,2\n");
}

TEST_CASE("iso report json carries exact ratio fields") {
    IsoReport rep;
    rep.mode = BoundaryMode::inner;
    rep.boundary_count = 2;
    rep.volume = 5;
    rep.ratio = Rational(2, 5);
    const ojson j = iso_report_json(rep);
    CHECK(j["mode"] == "inner");
    CHECK(j["boundary"] == 2);
    CHECK(j["volume"] == 5);
    CHECK(j["ratio_num"] == 2);
    CHECK(j["ratio_den"] == 5);
}
