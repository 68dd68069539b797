#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "horolab/io.hpp"
#include "horolab/isoperimetry.hpp"
#include "horolab/statistics.hpp"

namespace py = pybind11;
using namespace horolab;

namespace {

py::object to_fraction(const Rational& r) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::int_(py::str(int128_to_string(r.num()))),
                    py::int_(py::str(int128_to_string(r.den()))));
}

py::dict growth_to_dict(const GrowthReport& rep) {
    py::dict d;
    d["z_left"] = rep.z_left;
    d["z_right"] = rep.z_right;
    d["tolerance"] = rep.tolerance;
    d["satisfied"] = rep.satisfied;
    return d;
}

py::dict folner_series_to_dict(const FolnerSeries& series) {
    py::dict d;
    d["h_lo"] = series.h_lo;
    d["h_hi"] = series.h_hi;
    d["trials_requested"] = series.trials_requested;
    d["seed"] = series.seed;
    d["exploratory"] = series.exploratory;
    py::list rows;
    for (const auto& row : series.rows) {
        py::dict r;
        r["h"] = row.h;
        r["trials"] = row.trials;
        r["discarded"] = row.discarded;
        r["median"] = to_fraction(row.median);
        r["mean"] = row.mean;
        r["q10"] = row.q10;
        r["q90"] = row.q90;
        r["median_scaled"] = to_fraction(row.median_scaled);
        r["truncated"] = row.truncated;
        rows.append(std::move(r));
    }
    d["rows"] = std::move(rows);
    return d;
}

py::dict martingale_to_dict(const MartingaleStats& stats) {
    py::dict d;
    d["z"] = stats.z;
    d["trials"] = stats.trials;
    d["discarded"] = stats.discarded;
    py::list incs;
    for (const auto& lvl : stats.increments) {
        py::dict l;
        l["level"] = lvl.level;
        l["mean_increment"] = lvl.mean_increment;
        l["std_error"] = lvl.std_error;
        incs.append(std::move(l));
    }
    d["increments"] = std::move(incs);
    d["sup_inv_q50"] = stats.sup_inv_q50;
    d["sup_inv_q90"] = stats.sup_inv_q90;
    d["sup_inv_q99"] = stats.sup_inv_q99;
    d["sup_inv_max"] = stats.sup_inv_max;
    return d;
}

}  // namespace

PYBIND11_MODULE(_horolab, m) {
    m.doc() = "horocyclic products of percolation trees: sampling, exact isoperimetry, "
              "Monte Carlo experiments";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);
    py::register_exception<UnknownVertexError>(m, "UnknownVertexError", PyExc_KeyError);

    py::class_<TreeParams>(m, "TreeParams")
        .def(py::init([](int alpha_min, int alpha_max, double retention) {
                 TreeParams p{alpha_min, alpha_max, retention};
                 p.validate();
                 return p;
             }),
             py::arg("alpha_min"), py::arg("alpha_max"), py::arg("retention"))
        .def_readonly("alpha_min", &TreeParams::alpha_min)
        .def_readonly("alpha_max", &TreeParams::alpha_max)
        .def_readonly("retention", &TreeParams::retention)
        .def("__repr__", [](const TreeParams& p) {
            std::ostringstream out;
            out << "TreeParams(" << p.alpha_min << ", " << p.alpha_max << ", " << p.retention
                << ")";
            return out.str();
        });

    py::class_<VertexId>(m, "VertexId")
        .def(py::init<int, int>(), py::arg("level"), py::arg("index"))
        .def_readonly("level", &VertexId::level)
        .def_readonly("index", &VertexId::index);

    py::class_<LevelCounts>(m, "LevelCounts")
        .def_readonly("base_level", &LevelCounts::base_level)
        .def_readonly("counts", &LevelCounts::counts)
        .def("at", &LevelCounts::at, py::arg("level"));

    py::class_<LeveledTree>(m, "LeveledTree")
        .def_readonly("root_level", &LeveledTree::root_level)
        .def_readonly("height", &LeveledTree::height)
        .def_property_readonly("vertex_count", &LeveledTree::vertex_count)
        .def("level_counts", [](const LeveledTree& t) { return level_counts(t); })
        .def("to_json", &canonical_tree_json);

    py::class_<HoroGraph>(m, "HoroGraph")
        .def_property_readonly("vertex_count", &HoroGraph::vertex_count)
        .def_readonly("level_min", &HoroGraph::level_min)
        .def_readonly("level_max", &HoroGraph::level_max)
        .def_readonly("root", &HoroGraph::root)
        .def("degree", &HoroGraph::degree, py::arg("vertex"))
        .def("neighbors", &HoroGraph::neighbors, py::arg("vertex"))
        .def("connected_component",
             [](const HoroGraph& g, HoroGraph::VId v) { return connected_component(g, v); },
             py::arg("start"))
        .def("edge_csv", [](const HoroGraph& g) {
            std::ostringstream out;
            write_graph_edge_csv(g, out);
            return out.str();
        });

    m.def("offspring_pmf", &offspring_pmf, py::arg("params"), py::arg("k"));
    m.def("mean_offspring", &mean_offspring, py::arg("params"));

    m.def(
        "edge_open",
        [](const TreeParams& params, std::uint64_t seed, std::uint32_t tree_tag,
           const std::vector<int>& path) {
            return edge_open(BitSource{seed, tree_tag}, params, EdgeAddress{path});
        },
        py::arg("params"), py::arg("seed"), py::arg("tree_tag"), py::arg("path"));

    m.def("is_ancestor", &is_ancestor, py::arg("tree"), py::arg("u"), py::arg("v"));

    m.def(
        "sample_window_tree",
        [](const TreeParams& params, int root_level, int height, std::uint64_t seed,
           std::uint32_t tree_tag, std::size_t max_vertices) {
            return sample_window_tree(params, root_level, height, BitSource{seed, tree_tag},
                                      max_vertices);
        },
        py::arg("params"), py::arg("root_level"), py::arg("height"), py::arg("seed"),
        py::arg("tree_tag") = kRightFactorTag, py::arg("max_vertices") = kDefaultTreeVertexCap);

    m.def(
        "leaf_count_formula",
        [](const TreeParams& params, std::uint64_t seed, std::uint32_t tree_tag, int h, int j,
           long long cap) {
            return leaf_count_formula(params, BitSource{seed, tree_tag}, h, j, cap);
        },
        py::arg("params"), py::arg("seed"), py::arg("tree_tag"), py::arg("h"), py::arg("j"),
        py::arg("enumeration_cap") = kDefaultEnumerationCap);

    m.def("simulate_level_counts", &simulate_level_counts, py::arg("params"),
          py::arg("root_level"), py::arg("height"), py::arg("seed"),
          py::arg("count_cap") = kDefaultCountCap);

    m.def("build_product", &build_product, py::arg("left"), py::arg("right"),
          py::arg("max_vertices") = kDefaultProductVertexCap);
    m.def("build_dl_window", &build_dl_window, py::arg("alpha_left"), py::arg("alpha_right"),
          py::arg("h"), py::arg("max_vertices") = kDefaultProductVertexCap);

    m.def(
        "folner_ratio",
        [](const LevelCounts& left, const LevelCounts& right, int h) {
            return to_fraction(folner_ratio(left, right, h));
        },
        py::arg("left_counts"), py::arg("right_counts"), py::arg("h"));
    m.def(
        "folner_ratio_regular",
        [](int beta, int h) { return to_fraction(folner_ratio_regular(beta, h)); },
        py::arg("beta"), py::arg("h"));
    m.def(
        "tetraeder_ratio_regular",
        [](int beta, int N) { return to_fraction(tetraeder_ratio_regular(beta, N)); },
        py::arg("beta"), py::arg("N"));

    m.def(
        "tetraeder_ratio_explicit",
        [](int beta, int N) {
            const TetraederInstance inst = build_regular_tetraeder(beta, N);
            const IsoReport rep = tetraeder_report(inst.host, inst.subset);
            py::dict d;
            d["ratio"] = to_fraction(rep.ratio);
            d["boundary"] = rep.boundary_count;
            d["volume"] = rep.volume;
            return d;
        },
        py::arg("beta"), py::arg("N"));

    m.def(
        "iso_ratio",
        [](const HoroGraph& host, const std::vector<HoroGraph::VId>& members,
           const std::string& mode) {
            SubsetSelection sel{members};
            sel.normalize();
            const IsoReport rep = iso_ratio(
                host, sel, mode == "outer" ? BoundaryMode::outer : BoundaryMode::inner);
            py::dict d;
            d["mode"] = mode;
            d["boundary"] = rep.boundary_count;
            d["volume"] = rep.volume;
            d["ratio"] = to_fraction(rep.ratio);
            return d;
        },
        py::arg("host"), py::arg("members"), py::arg("mode") = "outer");

    m.def(
        "tetraeder_subset",
        [](const HoroGraph& host, const VertexId& apex_right, const VertexId& apex_left, int N) {
            return tetraeder_subset(host, apex_right, apex_left, N).members;
        },
        py::arg("host"), py::arg("apex_right"), py::arg("apex_left"), py::arg("N"));

    m.def(
        "anchored_constant_exact",
        [](const HoroGraph& host, HoroGraph::VId root, int n_max, int size_cap,
           long long budget) {
            const AnchoredResult res = anchored_constant_exact(host, root, n_max, size_cap, budget);
            py::dict d;
            d["min_ratio"] = to_fraction(res.min_ratio);
            d["witness"] = res.witness;
            d["subsets_enumerated"] = res.subsets_enumerated;
            return d;
        },
        py::arg("host"), py::arg("root"), py::arg("n_max"),
        py::arg("size_cap") = kDefaultAnchoredSizeCap,
        py::arg("budget") = kDefaultAnchoredBudget);

    m.def(
        "window_boundary_crosscheck",
        [](const TreeParams& left, const TreeParams& right, int h, std::uint64_t seed) {
            const BitSource lb{seed, kLeftFactorTag}, rb{seed, kRightFactorTag};
            const CrosscheckReport rep = window_boundary_crosscheck(
                sample_window_tree(left, -h, 2 * h, lb), sample_window_tree(right, -h, 2 * h, rb),
                h, lb, rb);
            py::dict d;
            d["expected"] = rep.expected;
            d["up"] = rep.up;
            d["down"] = rep.down;
            d["window_volume"] = rep.window_volume;
            d["pair_volume"] = rep.pair_volume;
            d["pass"] = rep.pass;
            return d;
        },
        py::arg("left"), py::arg("right"), py::arg("h"), py::arg("seed"));

    m.def(
        "growth_condition_check",
        [](const TreeParams& left, const TreeParams& right, double tolerance) {
            return growth_to_dict(growth_condition_check(left, right, tolerance));
        },
        py::arg("left"), py::arg("right"), py::arg("tolerance") = 1e-9);

    m.def(
        "all_closed_probability",
        [](const TreeParams& left, const TreeParams& right, int N) {
            const AllClosedReport rep = all_closed_probability(left, right, N);
            py::dict d;
            d["m_left"] = rep.m_left;
            d["m_right"] = rep.m_right;
            d["probability"] = rep.probability;
            return d;
        },
        py::arg("left"), py::arg("right"), py::arg("N"));

    m.def(
        "run_folner_experiment",
        [](const TreeParams& left, const TreeParams& right, int h_lo, int h_hi, long long trials,
           std::uint64_t seed, int jobs, long long count_cap) {
            return folner_series_to_dict(
                run_folner_experiment(left, right, h_lo, h_hi, trials, seed, jobs, count_cap));
        },
        py::arg("left"), py::arg("right"), py::arg("h_lo"), py::arg("h_hi"), py::arg("trials"),
        py::arg("seed"), py::arg("jobs") = 1, py::arg("count_cap") = kDefaultCountCap);

    m.def(
        "martingale_track",
        [](const TreeParams& params, int height, long long trials, std::uint64_t seed,
           bool condition_on_survival, int jobs) {
            return martingale_to_dict(
                martingale_track(params, height, trials, seed, condition_on_survival, jobs));
        },
        py::arg("params"), py::arg("height"), py::arg("trials"), py::arg("seed"),
        py::arg("condition_on_survival") = false, py::arg("jobs") = 1);

    m.def("chi_square_pvalue", &chi_square_pvalue, py::arg("stat"), py::arg("df"));
}
