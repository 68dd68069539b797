// horolab: experiment front end for horocyclic products of percolation trees.
//
// Exit codes: 0 success, 1 usage or resource error, 2 a verified identity or
// inequality failed (the computation itself succeeded).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "horolab/io.hpp"
#include "horolab/isoperimetry.hpp"
#include "horolab/statistics.hpp"

using namespace horolab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

TreeParams parse_params(const std::string& text) {
    TreeParams p;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> p.alpha_min >> c1 >> p.alpha_max >> c2 >> p.retention) || c1 != ',' || c2 != ',')
        throw ParameterError("expected TreeParams as 'alpha_min,alpha_max,p': " + text);
    std::string rest;
    if (in >> rest) throw ParameterError("trailing characters in TreeParams: " + text);
    p.validate();
    return p;
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) {
        const int v = std::stoi(text);
        return {v, v};
    }
    const int lo = std::stoi(text.substr(0, pos));
    const int hi = std::stoi(text.substr(pos + 2));
    if (hi < lo) throw ParameterError("range upper bound below lower bound: " + text);
    return {lo, hi};
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("HOROLAB_SEED")) return std::strtoull(env, nullptr, 10);
    return cli_seed;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot open output file: " + path);
    out << text;
}

ojson config_echo(const std::string& subcommand, std::uint64_t seed, int jobs) {
    ojson j;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["jobs"] = jobs;
    return j;
}

// csv artifacts carry the replay config as a leading comment line
std::string csv_config_line(const ojson& config) { return "# config " + config.dump() + "\n"; }

// --- subcommand payloads -------------------------------------------------

struct SampleTreeOpts {
    std::string params = "1,3,0.5";
    int root_level = 0;
    int height = 4;
    std::uint64_t seed = 0;
    int tag = kRightFactorTag;
    std::size_t max_vertices = kDefaultTreeVertexCap;
    std::string out;
};

int run_sample_tree(const SampleTreeOpts& o) {
    const TreeParams params = parse_params(o.params);
    const BitSource bits{effective_seed(o.seed), static_cast<std::uint32_t>(o.tag)};
    const LeveledTree tree =
        sample_window_tree(params, o.root_level, o.height, bits, o.max_vertices);
    const LevelCounts counts = level_counts(tree);
    std::cout << "vertices " << tree.vertex_count() << "\n";
    std::cout << "level_counts";
    for (auto c : counts.counts) std::cout << ' ' << c;
    std::cout << "\n";
    if (!o.out.empty()) {
        ojson j;
        j["config"] = config_echo("sample-tree", bits.master_seed, 1);
        j["config"]["params"] = params_to_json(params);
        j["config"]["root_level"] = o.root_level;
        j["config"]["height"] = o.height;
        j["config"]["tree_tag"] = o.tag;
        j["config"]["max_vertices"] = o.max_vertices;
        j["generated_at"] = timestamp();
        j["tree"] = tree_to_json(tree);
        write_text(o.out, j.dump(2) + "\n");
    }
    return kExitOk;
}

struct BuildWindowOpts {
    int alpha_left = 0;
    int alpha_right = 0;
    std::string left;
    std::string right;
    int h = 2;
    std::uint64_t seed = 0;
    std::size_t max_vertices = kDefaultProductVertexCap;
    std::string format = "csv";
    std::string out;
};

HoroGraph build_window_host(const BuildWindowOpts& o, std::uint64_t seed) {
    if (o.alpha_left > 0 && o.alpha_right > 0)
        return build_dl_window(o.alpha_left, o.alpha_right, o.h, o.max_vertices);
    if (o.left.empty() || o.right.empty())
        throw ParameterError("build-window: give either --alpha-left/--alpha-right or --left/--right");
    const TreeParams lp = parse_params(o.left);
    const TreeParams rp = parse_params(o.right);
    const LeveledTree lt = sample_window_tree(lp, -o.h, 2 * o.h,
                                              BitSource{seed, kLeftFactorTag}, o.max_vertices);
    const LeveledTree rt = sample_window_tree(rp, -o.h, 2 * o.h,
                                              BitSource{seed, kRightFactorTag}, o.max_vertices);
    return build_product(lt, rt, o.max_vertices);
}

int run_build_window(const BuildWindowOpts& o) {
    const std::uint64_t seed = effective_seed(o.seed);
    const HoroGraph host = build_window_host(o, seed);
    std::cout << "vertices " << host.vertex_count() << " levels " << host.level_min << ".."
              << host.level_max << "\n";
    if (!o.out.empty()) {
        ojson cfg = config_echo("build-window", seed, 1);
        cfg["alpha_left"] = o.alpha_left;
        cfg["alpha_right"] = o.alpha_right;
        cfg["left"] = o.left;
        cfg["right"] = o.right;
        cfg["h"] = o.h;
        if (o.format == "csv") {
            std::ostringstream csv;
            write_graph_edge_csv(host, csv);
            write_text(o.out, csv_config_line(cfg) + csv.str());
        } else if (o.format == "json") {
            ojson j;
            j["config"] = cfg;
            j["generated_at"] = timestamp();
            j["graph"] = graph_adjacency_json(host);
            write_text(o.out, j.dump(2) + "\n");
        } else {
            throw ParameterError("build-window: unknown format " + o.format);
        }
    }
    return kExitOk;
}

struct FolnerOpts {
    std::string left = "1,3,0.5";
    std::string right = "1,3,0.5";
    std::string h_range = "3..10";
    long long trials = 1000;
    std::uint64_t seed = 0;
    int jobs = 1;
    long long count_cap = kDefaultCountCap;
    int deterministic_beta = 0;
    std::string format = "csv";
    std::string out;
};

int run_folner(const FolnerOpts& o) {
    const auto [h_lo, h_hi] = parse_range(o.h_range);
    if (o.deterministic_beta > 0) {
        // exact per-h identity table, no sampling
        std::vector<FolnerTableRow> rows;
        for (int h = h_lo; h <= h_hi; ++h) {
            FolnerTableRow row;
            row.h = h;
            const LevelCounts counts = simulate_level_counts(
                {o.deterministic_beta, o.deterministic_beta, 1.0}, -h, 2 * h, 0);
            row.x_left_top = counts.at(h);
            row.x_right_top = counts.at(h);
            int128 volume = 0;
            for (int j = -h; j <= h; ++j)
                volume += static_cast<int128>(counts.at(-j)) * counts.at(j);
            row.volume = static_cast<long long>(volume);
            row.ratio = folner_ratio(counts, counts, h);
            rows.push_back(row);
        }
        std::ostringstream csv;
        write_folner_table_csv(rows, csv);
        if (!o.out.empty()) {
            ojson cfg = config_echo("folner", 0, 1);
            cfg["deterministic_beta"] = o.deterministic_beta;
            cfg["h_lo"] = h_lo;
            cfg["h_hi"] = h_hi;
            write_text(o.out, csv_config_line(cfg) + csv.str());
        } else {
            std::cout << csv.str();
        }
        return kExitOk;
    }

    const TreeParams left = parse_params(o.left);
    const TreeParams right = parse_params(o.right);
    const std::uint64_t seed = effective_seed(o.seed);
    const FolnerSeries series =
        run_folner_experiment(left, right, h_lo, h_hi, o.trials, seed, o.jobs, o.count_cap);
    if (series.exploratory)
        std::cerr << "note: equal-growth condition not satisfied; exploratory run\n";
    for (const auto& row : series.rows) {
        if (row.trials == 0) {
            std::cout << "h " << row.h << " no usable trials (" << row.discarded
                      << " discarded" << (row.truncated ? ", count cap hit" : "") << ")\n";
            continue;
        }
        std::cout << "h " << row.h << " median " << row.median.str() << " scaled "
                  << row.median_scaled.str() << (row.truncated ? " (truncated)" : "") << "\n";
    }
    if (!o.out.empty()) {
        ojson cfg = config_echo("folner", seed, o.jobs);
        cfg["left"] = params_to_json(left);
        cfg["right"] = params_to_json(right);
        cfg["h_lo"] = h_lo;
        cfg["h_hi"] = h_hi;
        cfg["trials"] = o.trials;
        cfg["count_cap"] = o.count_cap;
        if (o.format == "csv") {
            std::ostringstream csv;
            write_folner_series_csv(series, csv);
            write_text(o.out, csv_config_line(cfg) + csv.str());
        } else if (o.format == "json") {
            ojson j;
            j["config"] = cfg;
            j["generated_at"] = timestamp();
            j["series"] = folner_series_json(series);
            write_text(o.out, j.dump(2) + "\n");
        } else {
            throw ParameterError("folner: unknown format " + o.format);
        }
    }
    return kExitOk;
}

struct MartingaleOpts {
    std::string params = "2,3,0.5";
    int height = 8;
    long long trials = 10000;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool condition_on_survival = false;
    std::string out;
};

int run_martingale(const MartingaleOpts& o) {
    const TreeParams params = parse_params(o.params);
    const std::uint64_t seed = effective_seed(o.seed);
    const MartingaleStats stats =
        martingale_track(params, o.height, o.trials, seed, o.condition_on_survival, o.jobs);
    bool all_within = true;
    for (const auto& lvl : stats.increments) {
        const bool ok = std::abs(lvl.mean_increment) <= 3.0 * lvl.std_error;
        all_within = all_within && ok;
        std::cout << "level " << lvl.level << " mean_increment " << lvl.mean_increment << " se "
                  << lvl.std_error << (ok ? "" : " OUTSIDE-3SE") << "\n";
    }
    std::cout << "sup_inv_y q99 " << stats.sup_inv_q99 << " max " << stats.sup_inv_max << "\n";
    if (!o.out.empty()) {
        ojson j;
        j["config"] = config_echo("martingale", seed, o.jobs);
        j["config"]["params"] = params_to_json(params);
        j["config"]["height"] = o.height;
        j["config"]["trials"] = o.trials;
        j["generated_at"] = timestamp();
        j["stats"] = martingale_stats_json(stats);
        write_text(o.out, j.dump(2) + "\n");
    }
    return all_within ? kExitOk : kExitCheckFailed;
}

struct TetraederOpts {
    int beta = 2;
    int N = 4;
    std::size_t explicit_cap = 2'000'000;
    std::string out;
};

int run_tetraeder(const TetraederOpts& o) {
    const Rational closed = tetraeder_ratio_regular(o.beta, o.N);
    std::optional<IsoReport> explicit_report;
    bool agree = true;
    try {
        const TetraederInstance inst = build_regular_tetraeder(o.beta, o.N, o.explicit_cap);
        explicit_report = tetraeder_report(inst.host, inst.subset);
        agree = explicit_report->ratio == closed;
    } catch (const ResourceLimitError&) {
        // closed-form only beyond the explicit-construction budget
    }
    std::cout << "ratio = " << closed.str() << "\n";
    if (explicit_report)
        std::cout << "explicit boundary " << explicit_report->boundary_count << " volume "
                  << explicit_report->volume << (agree ? " (matches)" : " (MISMATCH)") << "\n";
    if (!o.out.empty()) {
        ojson j;
        j["config"] = config_echo("tetraeder", 0, 1);
        j["config"]["beta"] = o.beta;
        j["config"]["N"] = o.N;
        j["generated_at"] = timestamp();
        j["ratio"] = rational_to_json(closed);
        if (explicit_report) j["explicit"] = iso_report_json(*explicit_report);
        write_text(o.out, j.dump(2) + "\n");
    }
    return agree ? kExitOk : kExitCheckFailed;
}

struct AnchoredOpts {
    int alpha_left = 1;
    int alpha_right = 1;
    int h = 10;
    int n_max = 8;
    int size_cap = kDefaultAnchoredSizeCap;
    long long budget = kDefaultAnchoredBudget;
    std::string out;
};

int run_anchored(const AnchoredOpts& o) {
    const HoroGraph host = build_dl_window(o.alpha_left, o.alpha_right, o.h);
    const AnchoredResult result =
        anchored_constant_exact(host, host.root, o.n_max, o.size_cap, o.budget);
    std::cout << "min ratio = " << result.min_ratio.str() << " over "
              << result.subsets_enumerated << " subsets\n";
    if (!o.out.empty()) {
        IsoReport rep;
        rep.mode = BoundaryMode::outer;
        rep.volume = static_cast<long long>(result.witness.size());
        rep.boundary_count = static_cast<long long>(
            outer_boundary(host, SubsetSelection{result.witness}).size());
        rep.ratio = result.min_ratio;
        ojson j;
        j["config"] = config_echo("anchored", 0, 1);
        j["config"]["alpha_left"] = o.alpha_left;
        j["config"]["alpha_right"] = o.alpha_right;
        j["config"]["h"] = o.h;
        j["config"]["n_max"] = o.n_max;
        j["generated_at"] = timestamp();
        j["report"] = iso_report_json(rep, host, result.witness);
        write_text(o.out, j.dump(2) + "\n");
    }
    return kExitOk;
}

struct CutcheckOpts {
    std::string left = "1,1,0.5";
    std::string right = "2,3,0.5";
    int h = 3;
    std::uint64_t seed = 0;
    int balls = 100;
    int subsets = 100;
    int max_size = 12;
    std::string out;
};

int run_cutcheck(const CutcheckOpts& o) {
    if (o.max_size < 2) throw ParameterError("cutcheck: --max-size must be >= 2");
    const TreeParams lp = parse_params(o.left);
    const TreeParams rp = parse_params(o.right);
    const std::uint64_t seed = effective_seed(o.seed);
    const LeveledTree lt = sample_window_tree(lp, -o.h, 2 * o.h, BitSource{seed, kLeftFactorTag});
    const LeveledTree rt = sample_window_tree(rp, -o.h, 2 * o.h, BitSource{seed, kRightFactorTag});
    const HoroGraph host = build_product(lt, rt);

    std::mt19937_64 rng(splitmix64(seed));
    std::vector<SubsetSelection> samples;
    for (int i = 0; i < o.balls; ++i) samples.push_back(random_bfs_ball(host, rng, 3, o.max_size));
    for (int i = 0; i < o.subsets; ++i)
        samples.push_back(random_connected_subset(host, rng, 2 + i % (o.max_size - 1)));
    const CutCheckReport report = cut_lower_bound_check(host, samples);

    bool pieces_ok = true;
    long long piece_count = 0;
    if (lp.alpha_min == 1 && lp.alpha_max == 1) {
        // deterministic line factor: remanent components must be full
        // alpha_min-ary window pieces
        for (const auto& comp : remanent_components(host)) {
            ++piece_count;
            if (!component_is_dl_piece(host, comp, lp.alpha_max, rp.alpha_min)) pieces_ok = false;
        }
    }

    std::cout << "samples " << report.samples.size() << " all_pass "
              << (report.all_pass ? "yes" : "no") << "\n";
    if (piece_count > 0)
        std::cout << "remanent components " << piece_count << " dl_piece_check "
                  << (pieces_ok ? "pass" : "FAIL") << "\n";
    if (!o.out.empty()) {
        ojson j;
        j["config"] = config_echo("cutcheck", seed, 1);
        j["config"]["left"] = params_to_json(lp);
        j["config"]["right"] = params_to_json(rp);
        j["config"]["h"] = o.h;
        j["generated_at"] = timestamp();
        j["report"] = cut_check_json(report);
        j["dl_piece_check"] = pieces_ok;
        write_text(o.out, j.dump(2) + "\n");
    }
    return report.all_pass && pieces_ok ? kExitOk : kExitCheckFailed;
}

struct Lemma11Opts {
    int instances = 20;
    std::uint64_t seed = 0;
};

int run_lemma11(const Lemma11Opts& o) {
    const std::uint64_t seed = effective_seed(o.seed);
    std::mt19937_64 rng(splitmix64(seed));
    int failures = 0;
    for (int i = 0; i < o.instances; ++i) {
        std::uniform_int_distribution<int> small(1, 3);
        const int h1 = small(rng);
        const int h2 = small(rng);
        const int amax1 = small(rng);
        const int amax2 = small(rng);
        std::uniform_int_distribution<int> r2pick(1, h1);
        const int r2 = r2pick(rng);

        const BitSource base{seed, kRightFactorTag};
        const BitSource b1 = base.with_salt(2 * i);
        const BitSource b2 = base.with_salt(2 * i + 1);
        const LeveledTree part1 = sample_window_tree({1, amax1, 0.6}, 0, h1, b1);
        const LeveledTree part2 = sample_window_tree({1, amax2, 0.6}, r2, h2, b2);

        const int top = std::max(part1.top_level(), part2.top_level());
        const LeveledTree line = sample_window_tree({1, 1, 1.0}, -top, top, BitSource{0, 1});

        std::uniform_int_distribution<int> bpick(0, static_cast<int>(
            part1.level_size(r2 - 1)) - 1);
        FactorBridge bridge{0, VertexId{r2 - 1, bpick(rng)}, 1, VertexId{r2, 0}};
        const UnionProductReport rep = union_product_check(line, part1, part2, bridge);
        const bool ok = rep.pass && rep.components_union == 2 && rep.components_bridged == 1;
        if (!ok) {
            ++failures;
            std::cout << "instance " << i << ": union " << rep.components_union << " bridged "
                      << (rep.components_bridged ? *rep.components_bridged : -1) << " FAIL\n";
        }
    }
    std::cout << (o.instances - failures) << "/" << o.instances << " instances pass\n";
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

struct GrowthcheckOpts {
    std::string left;
    std::string right;
    double tolerance = 1e-9;
};

std::string trim_number(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

int run_growthcheck(const GrowthcheckOpts& o) {
    const GrowthReport rep =
        growth_condition_check(parse_params(o.left), parse_params(o.right), o.tolerance);
    std::cout << (rep.satisfied ? "satisfied: " : "violated: ") << trim_number(rep.z_left)
              << " vs " << trim_number(rep.z_right) << "\n";
    return rep.satisfied ? kExitOk : kExitCheckFailed;
}

struct AllclosedOpts {
    std::string left;
    std::string right;
    int N = 1;
};

int run_allclosed(const AllclosedOpts& o) {
    const AllClosedReport rep =
        all_closed_probability(parse_params(o.left), parse_params(o.right), o.N);
    std::cout << "M_left " << rep.m_left << " M_right " << rep.m_right << " probability "
              << trim_number(rep.probability) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"horocyclic products of percolation trees: sampling, exact "
                 "isoperimetry, and Monte Carlo experiments"};
    app.require_subcommand(1);
    // several subcommands take --h, so help is --help only
    app.set_help_flag("--help", "print help");
    app.option_defaults()->ignore_case(false);

    SampleTreeOpts sample_opts;
    auto* sample = app.add_subcommand("sample-tree", "sample one percolation window tree");
    sample->add_option("--params", sample_opts.params, "alpha_min,alpha_max,p");
    sample->add_option("--root-level", sample_opts.root_level);
    sample->add_option("--height", sample_opts.height);
    sample->add_option("--seed", sample_opts.seed);
    sample->add_option("--tag", sample_opts.tag, "factor tag (0 right, 1 left)");
    sample->add_option("--max-vertices", sample_opts.max_vertices);
    sample->add_option("--out", sample_opts.out);

    BuildWindowOpts window_opts;
    auto* window = app.add_subcommand("build-window", "build an explicit product window");
    window->add_option("--alpha-left", window_opts.alpha_left, "deterministic left branching");
    window->add_option("--alpha-right", window_opts.alpha_right, "deterministic right branching");
    window->add_option("--left", window_opts.left, "sampled left params alpha_min,alpha_max,p");
    window->add_option("--right", window_opts.right, "sampled right params");
    window->add_option("--h", window_opts.h);
    window->add_option("--seed", window_opts.seed);
    window->add_option("--max-vertices", window_opts.max_vertices);
    window->add_option("--format", window_opts.format, "csv|json");
    window->add_option("--out", window_opts.out);

    FolnerOpts folner_opts;
    auto* folner = app.add_subcommand("folner", "window-ratio decay experiment");
    folner->add_option("--left", folner_opts.left);
    folner->add_option("--right", folner_opts.right);
    folner->add_option("--h", folner_opts.h_range, "h range lo..hi");
    folner->add_option("--trials", folner_opts.trials);
    folner->add_option("--seed", folner_opts.seed);
    folner->add_option("--jobs", folner_opts.jobs);
    folner->add_option("--count-cap", folner_opts.count_cap);
    folner->add_option("--deterministic-beta", folner_opts.deterministic_beta,
                       "emit the exact beta-regular table instead of sampling");
    folner->add_option("--format", folner_opts.format, "csv|json");
    folner->add_option("--out", folner_opts.out);

    MartingaleOpts mart_opts;
    auto* mart = app.add_subcommand("martingale", "normalized level-count diagnostics");
    mart->add_option("--params", mart_opts.params);
    mart->add_option("--height", mart_opts.height);
    mart->add_option("--trials", mart_opts.trials);
    mart->add_option("--seed", mart_opts.seed);
    mart->add_option("--jobs", mart_opts.jobs);
    mart->add_flag("--condition-on-survival", mart_opts.condition_on_survival);
    mart->add_option("--out", mart_opts.out);

    TetraederOpts tetra_opts;
    auto* tetra = app.add_subcommand("tetraeder", "diamond subset ratio in a regular window");
    tetra->add_option("--beta", tetra_opts.beta);
    tetra->add_option("--N", tetra_opts.N);
    tetra->add_option("--explicit-cap", tetra_opts.explicit_cap,
                      "vertex budget for the explicit cross-check");
    tetra->add_option("--out", tetra_opts.out);

    AnchoredOpts anchored_opts;
    auto* anchored = app.add_subcommand("anchored", "exhaustive anchored-ratio minimum");
    anchored->add_option("--alpha-left", anchored_opts.alpha_left);
    anchored->add_option("--alpha-right", anchored_opts.alpha_right);
    anchored->add_option("--h", anchored_opts.h);
    anchored->add_option("--n-max", anchored_opts.n_max);
    anchored->add_option("--size-cap", anchored_opts.size_cap);
    anchored->add_option("--budget", anchored_opts.budget);
    anchored->add_option("--out", anchored_opts.out);

    CutcheckOpts cut_opts;
    auto* cut = app.add_subcommand("cutcheck", "edge-removal ratio comparison");
    cut->add_option("--left", cut_opts.left);
    cut->add_option("--right", cut_opts.right);
    cut->add_option("--h", cut_opts.h);
    cut->add_option("--seed", cut_opts.seed);
    cut->add_option("--balls", cut_opts.balls);
    cut->add_option("--subsets", cut_opts.subsets);
    cut->add_option("--max-size", cut_opts.max_size);
    cut->add_option("--out", cut_opts.out);

    Lemma11Opts lemma_opts;
    auto* lemma = app.add_subcommand("lemma11", "disjoint-union product connectivity check");
    lemma->add_option("--instances", lemma_opts.instances);
    lemma->add_option("--seed", lemma_opts.seed);

    GrowthcheckOpts growth_opts;
    auto* growth = app.add_subcommand("growthcheck", "equal-growth condition check");
    growth->add_option("--left", growth_opts.left)->required();
    growth->add_option("--right", growth_opts.right)->required();
    growth->add_option("--tolerance", growth_opts.tolerance);

    AllclosedOpts closed_opts;
    auto* closed = app.add_subcommand("allclosed", "all-percolative-closed probability");
    closed->add_option("--left", closed_opts.left)->required();
    closed->add_option("--right", closed_opts.right)->required();
    closed->add_option("--N", closed_opts.N);

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->set_help_flag("--help", "print help");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sample->parsed()) return run_sample_tree(sample_opts);
        if (window->parsed()) return run_build_window(window_opts);
        if (folner->parsed()) return run_folner(folner_opts);
        if (mart->parsed()) return run_martingale(mart_opts);
        if (tetra->parsed()) return run_tetraeder(tetra_opts);
        if (anchored->parsed()) return run_anchored(anchored_opts);
        if (cut->parsed()) return run_cutcheck(cut_opts);
        if (lemma->parsed()) return run_lemma11(lemma_opts);
        if (growth->parsed()) return run_growthcheck(growth_opts);
        if (closed->parsed()) return run_allclosed(closed_opts);
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
