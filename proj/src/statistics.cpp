#include "horolab/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <thread>

#include "horolab/bits.hpp"
#include "horolab/isoperimetry.hpp"

namespace horolab {

namespace {

void parallel_for(long long total, int jobs, const std::function<void(long long)>& body) {
    if (jobs <= 1 || total < 2) {
        for (long long i = 0; i < total; ++i) body(i);
        return;
    }
    const int workers = static_cast<int>(std::min<long long>(jobs, total));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (long long i = w; i < total; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

long long draw_offspring_sum(std::mt19937_64& rng, const TreeParams& params, long long parents) {
    const long long marked = static_cast<long long>(params.alpha_max - params.alpha_min) * parents;
    long long open = 0;
    if (marked > 0) {
        if (params.retention >= 1.0) {
            open = marked;
        } else if (params.retention > 0.0) {
            std::binomial_distribution<long long> binom(marked, params.retention);
            open = binom(rng);
        }
    }
    return static_cast<long long>(params.alpha_min) * parents + open;
}

}  // namespace

LevelCounts simulate_level_counts(const TreeParams& params, int root_level, int height,
                                  std::uint64_t seed, long long count_cap) {
    params.validate();
    if (height < 0) throw ParameterError("simulate_level_counts: height must be >= 0");
    std::mt19937_64 rng(splitmix64(seed));
    LevelCounts out;
    out.base_level = root_level;
    out.counts.reserve(height + 1);
    long long x = 1;
    out.counts.push_back(x);
    for (int d = 0; d < height; ++d) {
        if (x == 0) {
            out.counts.push_back(0);
            continue;
        }
        if (x > count_cap / params.alpha_max)
            throw ResourceLimitError("count cap (" + std::to_string(count_cap) +
                                     ") exceeded at level " + std::to_string(root_level + d));
        x = draw_offspring_sum(rng, params, x);
        out.counts.push_back(x);
    }
    return out;
}

MartingaleStats martingale_track(const TreeParams& params, int height, long long trials,
                                 std::uint64_t seed, bool condition_on_survival, int jobs) {
    params.validate();
    if (height < 1) throw ParameterError("martingale_track: height must be >= 1");
    if (trials < 1) throw ParameterError("martingale_track: trials must be >= 1");
    if (params.alpha_min == 0 && !condition_on_survival)
        throw ParameterError(
            "martingale_track: alpha_min = 0 allows extinction; pass the conditioning flag");

    const double z = mean_offspring(params);
    std::vector<double> incs(static_cast<std::size_t>(trials) * height,
                             std::numeric_limits<double>::quiet_NaN());
    std::vector<double> sups(static_cast<std::size_t>(trials),
                             std::numeric_limits<double>::quiet_NaN());

    std::vector<char> capped(static_cast<std::size_t>(trials), 0);
    parallel_for(trials, jobs, [&](long long t) {
        LevelCounts counts;
        try {
            counts = simulate_level_counts(params, 0, height,
                                           mix64(seed, static_cast<std::uint64_t>(t)));
        } catch (const ResourceLimitError&) {
            capped[static_cast<std::size_t>(t)] = 1;  // rethrown after the join
            return;
        }
        if (std::any_of(counts.counts.begin(), counts.counts.end(),
                        [](long long c) { return c == 0; }))
            return;  // extinct trial, left as NaN and discarded below
        double zpow = 1.0;
        double prev_y = 1.0;
        double sup_inv = 1.0;
        for (int j = 1; j <= height; ++j) {
            zpow *= z;
            const double y = static_cast<double>(counts.counts[j]) / zpow;
            incs[static_cast<std::size_t>(t) * height + (j - 1)] = y - prev_y;
            sup_inv = std::max(sup_inv, 1.0 / y);
            prev_y = y;
        }
        sups[static_cast<std::size_t>(t)] = sup_inv;
    });
    if (std::any_of(capped.begin(), capped.end(), [](char c) { return c != 0; }))
        throw ResourceLimitError("martingale_track: a trial exceeded the count cap");

    MartingaleStats stats;
    stats.z = z;
    std::vector<double> usable_sups;
    usable_sups.reserve(static_cast<std::size_t>(trials));
    for (long long t = 0; t < trials; ++t) {
        if (std::isnan(sups[static_cast<std::size_t>(t)])) {
            ++stats.discarded;
        } else {
            usable_sups.push_back(sups[static_cast<std::size_t>(t)]);
        }
    }
    stats.trials = static_cast<long long>(usable_sups.size());
    if (stats.trials == 0)
        throw ParameterError("martingale_track: every trial went extinct");

    for (int j = 0; j < height; ++j) {
        double sum = 0.0, sumsq = 0.0;
        long long n = 0;
        for (long long t = 0; t < trials; ++t) {
            const double d = incs[static_cast<std::size_t>(t) * height + j];
            if (std::isnan(d)) continue;
            sum += d;
            sumsq += d * d;
            ++n;
        }
        MartingaleLevelStat lvl;
        lvl.level = j;
        lvl.mean_increment = sum / n;
        const double var = n > 1 ? std::max(0.0, (sumsq - sum * sum / n) / (n - 1)) : 0.0;
        lvl.std_error = std::sqrt(var / n);
        stats.increments.push_back(lvl);
    }

    std::sort(usable_sups.begin(), usable_sups.end());
    const auto quantile = [&](double q) {
        const auto idx = static_cast<std::size_t>(q * (usable_sups.size() - 1));
        return usable_sups[idx];
    };
    stats.sup_inv_q50 = quantile(0.50);
    stats.sup_inv_q90 = quantile(0.90);
    stats.sup_inv_q99 = quantile(0.99);
    stats.sup_inv_max = usable_sups.back();
    return stats;
}

GrowthReport growth_condition_check(const TreeParams& left, const TreeParams& right,
                                    double tolerance) {
    GrowthReport rep;
    rep.z_left = mean_offspring(left);
    rep.z_right = mean_offspring(right);
    rep.tolerance = tolerance;
    rep.satisfied = std::abs(rep.z_left - rep.z_right) <= tolerance;
    return rep;
}

namespace {

long long m_n_of(const TreeParams& params, int N) {
    // alpha_max * sum_{i=0..N} alpha_min^i; the alpha_min = 1 case degenerates
    // to alpha_max * (N+1), alpha_min = 0 to alpha_max.
    long long sum = 0, pw = 1;
    const long long limit = 1'000'000'000'000'000'000LL;
    for (int i = 0; i <= N; ++i) {
        sum += pw;
        if (sum > limit / params.alpha_max)
            throw ResourceLimitError("all_closed_probability: M_N overflows the integer range");
        if (i < N) {
            if (params.alpha_min > 0 && pw > limit / std::max(params.alpha_min, 1))
                throw ResourceLimitError("all_closed_probability: M_N overflows the integer range");
            pw *= params.alpha_min;
        }
    }
    return params.alpha_max * sum;
}

}  // namespace

AllClosedReport all_closed_probability(const TreeParams& left, const TreeParams& right, int N) {
    left.validate();
    right.validate();
    if (N < 0) throw ParameterError("all_closed_probability: N must be >= 0");
    AllClosedReport rep;
    rep.m_left = m_n_of(left, N);
    rep.m_right = m_n_of(right, N);
    rep.probability = std::pow(1.0 - left.retention, 2.0 * static_cast<double>(rep.m_left)) *
                      std::pow(1.0 - right.retention, 2.0 * static_cast<double>(rep.m_right));
    return rep;
}

FolnerSeries run_folner_experiment(const TreeParams& left, const TreeParams& right, int h_lo,
                                   int h_hi, long long trials, std::uint64_t seed, int jobs,
                                   long long count_cap) {
    left.validate();
    right.validate();
    if (h_lo < 0 || h_hi < h_lo) throw ParameterError("run_folner_experiment: bad h range");
    if (trials < 1) throw ParameterError("run_folner_experiment: trials must be >= 1");

    FolnerSeries series;
    series.left = left;
    series.right = right;
    series.h_lo = h_lo;
    series.h_hi = h_hi;
    series.trials_requested = trials;
    series.seed = seed;
    series.exploratory = !growth_condition_check(left, right).satisfied;

    for (int h = h_lo; h <= h_hi; ++h) {
        const std::uint64_t h_seed = mix64(seed, static_cast<std::uint64_t>(h));
        std::vector<Rational> ratios(static_cast<std::size_t>(trials));
        std::vector<char> extinct(static_cast<std::size_t>(trials), 0);
        std::vector<char> capped(static_cast<std::size_t>(trials), 0);

        parallel_for(trials, jobs, [&](long long t) {
            try {
                const LevelCounts lc = simulate_level_counts(
                    left, -h, 2 * h, mix64(h_seed, 2 * static_cast<std::uint64_t>(t) + 1),
                    count_cap);
                const LevelCounts rc = simulate_level_counts(
                    right, -h, 2 * h, mix64(h_seed, 2 * static_cast<std::uint64_t>(t)),
                    count_cap);
                if (std::any_of(lc.counts.begin(), lc.counts.end(),
                                [](long long c) { return c == 0; }) ||
                    std::any_of(rc.counts.begin(), rc.counts.end(),
                                [](long long c) { return c == 0; })) {
                    extinct[static_cast<std::size_t>(t)] = 1;
                    return;
                }
                ratios[static_cast<std::size_t>(t)] = folner_ratio(lc, rc, h);
            } catch (const ResourceLimitError&) {
                capped[static_cast<std::size_t>(t)] = 1;
            }
        });

        FolnerRow row;
        row.h = h;
        row.truncated = std::any_of(capped.begin(), capped.end(), [](char c) { return c != 0; });
        std::vector<Rational> usable;
        usable.reserve(static_cast<std::size_t>(trials));
        for (long long t = 0; t < trials; ++t) {
            if (extinct[static_cast<std::size_t>(t)] || capped[static_cast<std::size_t>(t)]) {
                ++row.discarded;
            } else {
                usable.push_back(ratios[static_cast<std::size_t>(t)]);
            }
        }
        row.trials = static_cast<long long>(usable.size());
        if (row.trials > 0) {
            std::sort(usable.begin(), usable.end());
            row.median = usable[(usable.size() - 1) / 2];  // lower median, kept exact
            row.q10 = usable[static_cast<std::size_t>(0.1 * (usable.size() - 1))].to_double();
            row.q90 = usable[static_cast<std::size_t>(0.9 * (usable.size() - 1))].to_double();
            double sum = 0.0;
            for (const auto& r : usable) sum += r.to_double();
            row.mean = sum / static_cast<double>(usable.size());
            row.median_scaled = row.median.scaled(2LL * h + 1);
        }
        const bool stop = row.truncated;
        series.rows.push_back(std::move(row));
        if (stop) break;  // larger h can only overflow harder
    }
    return series;
}

namespace {

// Regularized incomplete gamma Q(a,x) by series / continued fraction.
double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw ParameterError("gamma_q: domain error");
    if (x == 0.0) return 1.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // series for P(a,x)
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - lg);
        return 1.0 - p;
    }
    // Lentz continued fraction for Q(a,x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double frac = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        frac *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return frac * std::exp(-x + a * std::log(x) - lg);
}

}  // namespace

double chi_square_pvalue(double stat, int df) {
    if (df < 1) throw ParameterError("chi_square_pvalue: df must be >= 1");
    if (stat <= 0.0) return 1.0;
    return gamma_q(0.5 * df, 0.5 * stat);
}

}  // namespace horolab
