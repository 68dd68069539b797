#pragma once

#include <cstdint>
#include <vector>

#include "horolab/leveled_tree.hpp"
#include "horolab/rational.hpp"

namespace horolab {

inline constexpr long long kDefaultCountCap = 1'000'000'000'000'000LL;  // 1e15

// Counts-only branching simulation: one aggregated binomial draw per level
// (alpha_min * X_j surviving children plus Binomial((alpha_max-alpha_min) X_j, p)),
// distributionally identical to counting a sampled window tree.
LevelCounts simulate_level_counts(const TreeParams& params, int root_level, int height,
                                  std::uint64_t seed, long long count_cap = kDefaultCountCap);

struct MartingaleLevelStat {
    int level = 0;
    double mean_increment = 0.0;  // mean of Y_{level+1} - Y_{level}
    double std_error = 0.0;
};

// Per-level martingale increment diagnostics of Y_j = X_j / z^{j - root},
// plus the empirical distribution of sup_j 1/Y_j over non-extinct trials.
struct MartingaleStats {
    double z = 0.0;
    long long trials = 0;  // non-extinct trials entering the statistics
    long long discarded = 0;
    std::vector<MartingaleLevelStat> increments;
    double sup_inv_q50 = 0.0;
    double sup_inv_q90 = 0.0;
    double sup_inv_q99 = 0.0;
    double sup_inv_max = 0.0;
};

MartingaleStats martingale_track(const TreeParams& params, int height, long long trials,
                                 std::uint64_t seed, bool condition_on_survival = false,
                                 int jobs = 1);

struct GrowthReport {
    double z_left = 0.0;
    double z_right = 0.0;
    double tolerance = 0.0;
    bool satisfied = false;
};

// Equal-growth condition: mean offspring of the two factors agree within the
// tolerance.
GrowthReport growth_condition_check(const TreeParams& left, const TreeParams& right,
                                    double tolerance = 1e-9);

struct AllClosedReport {
    long long m_left = 0;   // M_N of the left factor
    long long m_right = 0;  // M_N of the right factor
    double probability = 0.0;
};

// Probability that every percolative edge within an N-level span is closed on
// both factors: (1-p')^{2 M_N(left)} (1-p)^{2 M_N(right)} with
// M_N = alpha_max * sum_{i=0..N} alpha_min^i.
AllClosedReport all_closed_probability(const TreeParams& left, const TreeParams& right, int N);

struct FolnerRow {
    int h = 0;
    long long trials = 0;  // non-extinct trials entering the statistics
    long long discarded = 0;
    Rational median;
    double mean = 0.0;
    double q10 = 0.0;
    double q90 = 0.0;
    Rational median_scaled;  // median * (2h+1)
    bool truncated = false;  // a trial hit the count cap at this h
};

struct FolnerSeries {
    TreeParams left;
    TreeParams right;
    int h_lo = 0;
    int h_hi = 0;
    long long trials_requested = 0;
    std::uint64_t seed = 0;
    bool exploratory = false;  // equal-growth condition not satisfied
    std::vector<FolnerRow> rows;
};

// Monte Carlo window-ratio experiment: for each h, draws independent factor
// level counts over levels -h..h and records the exact window ratio.
FolnerSeries run_folner_experiment(const TreeParams& left, const TreeParams& right, int h_lo,
                                   int h_hi, long long trials, std::uint64_t seed, int jobs = 1,
                                   long long count_cap = kDefaultCountCap);

// Upper tail of the chi-square distribution: P[X > stat] with df degrees of
// freedom (regularized incomplete gamma Q(df/2, stat/2)).
double chi_square_pvalue(double stat, int df);

}  // namespace horolab
