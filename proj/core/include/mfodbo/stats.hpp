#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mfodbo::stats {

enum class Comparison { better, similar, worse };

/// Mean comparison with a relative tie band (minimization): means within
/// tie_tol * max(1, |mean_b|) fall back to the standard deviations, lower
/// std wins; equal stds within the same band are Similar.
Comparison bsw_compare(std::span<const double> a, std::span<const double> b,
                       double tie_tol = 1e-8);

enum class Verdict { plus, tie, minus };

struct WilcoxonResult {
    double p_value = 1.0;
    Verdict verdict = Verdict::tie;
};

/// Two-sided rank-sum test. Small samples (both sides <= 10) use the exact
/// permutation distribution of the rank sum (midranks for ties); larger ones
/// use the normal approximation with tie and continuity corrections.
/// Verdict is '+' when p < alpha and mean(a) < mean(b), '-' when p < alpha
/// and mean(a) > mean(b), tie otherwise.
WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                 double alpha = 0.05);

/// means[algo][fn]: per-function mean final fitness per algorithm.
/// Ranks each function's column ascending (rank 1 = best, midranks on ties)
/// and returns each algorithm's mean rank across functions.
std::vector<double> friedman_ranks(const std::vector<std::vector<double>>& means);

/// Mean absolute deviation from the per-dimension median, averaged over
/// dimensions: the population diversity used by the exploration metric.
double population_diversity(const std::vector<std::vector<double>>& positions);

struct EePoint {
    double exploration_pct = 0.0;
    double exploitation_pct = 100.0;
};

/// exploration%(t) = 100 * Div(t) / max_t Div(t), exploitation% the
/// complement; the pair always sums to 100. An all-zero diversity history
/// (e.g. a single-member population) maps to exploration 0 by convention.
std::vector<EePoint> exploration_exploitation(std::span<const double> diversity);

/// Convenience overload computing Div(t) from raw population snapshots.
std::vector<EePoint> exploration_exploitation(
    const std::vector<std::vector<std::vector<double>>>& snapshots);

double mean(std::span<const double> values);
double sample_std(std::span<const double> values);
double median(std::vector<double> values);

} // namespace mfodbo::stats
