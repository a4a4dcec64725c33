#include "mfodbo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace mfodbo::stats {

double mean(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("mean: empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

double sample_std(std::span<const double> values) {
    if (values.size() < 2)
        return 0.0;
    const double m = mean(values);
    double acc = 0.0;
    for (double v : values)
        acc += (v - m) * (v - m);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

double median(std::vector<double> values) {
    if (values.empty())
        throw std::invalid_argument("median: empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1)
        return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

Comparison bsw_compare(std::span<const double> a, std::span<const double> b, double tie_tol) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("bsw_compare: empty sample");
    const double mean_a = mean(a);
    const double mean_b = mean(b);
    const double band = tie_tol * std::max(1.0, std::abs(mean_b));
    if (std::abs(mean_a - mean_b) <= band) {
        const double std_a = sample_std(a);
        const double std_b = sample_std(b);
        if (std::abs(std_a - std_b) <= band)
            return Comparison::similar;
        return std_a < std_b ? Comparison::better : Comparison::worse;
    }
    return mean_a < mean_b ? Comparison::better : Comparison::worse;
}

namespace {

// Midranks of the pooled sample, returned per input element, plus the tie
// group sizes for the variance correction.
struct PooledRanks {
    std::vector<double> ranks; // pooled order follows (a..., b...)
    std::vector<std::size_t> tie_groups;
};

PooledRanks pooled_midranks(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size() + b.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto value = [&](std::size_t idx) {
        return idx < a.size() ? a[idx] : b[idx - a.size()];
    };
    std::sort(order.begin(), order.end(),
              [&](std::size_t lhs, std::size_t rhs) { return value(lhs) < value(rhs); });

    PooledRanks out;
    out.ranks.resize(n);
    std::size_t pos = 0;
    while (pos < n) {
        std::size_t end = pos + 1;
        while (end < n && value(order[end]) == value(order[pos]))
            ++end;
        const double midrank = 0.5 * static_cast<double>(pos + 1 + end); // average of pos+1..end
        for (std::size_t k = pos; k < end; ++k)
            out.ranks[order[k]] = midrank;
        out.tie_groups.push_back(end - pos);
        pos = end;
    }
    return out;
}

double two_sided_normal_p(double z) { return std::erfc(std::abs(z) / std::numbers::sqrt2); }

// Exact two-sided p of the rank-sum statistic under the permutation null:
// P(|W - E| >= |w_obs - E|). Counts subsets by dynamic programming over
// doubled ranks (midranks are integral when doubled).
double exact_rank_sum_p(const std::vector<double>& ranks, std::size_t n1, double w_obs) {
    const std::size_t n = ranks.size();
    std::vector<long long> doubled(n);
    long long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        doubled[i] = std::llround(2.0 * ranks[i]);
        total += doubled[i];
    }
    const std::size_t w_max = static_cast<std::size_t>(total);
    // count[k][s] = number of k-subsets of the doubled ranks summing to s
    std::vector<std::vector<double>> count(n1 + 1, std::vector<double>(w_max + 1, 0.0));
    count[0][0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<std::size_t>(doubled[i]);
        for (std::size_t k = std::min(n1, i + 1); k >= 1; --k)
            for (std::size_t s = w_max; s >= r; --s)
                if (count[k - 1][s - r] > 0.0)
                    count[k][s] += count[k - 1][s - r];
    }
    double subsets = 0.0;
    for (double c : count[n1])
        subsets += c;

    const double expectation =
        static_cast<double>(n1) * (static_cast<double>(n) + 1.0); // doubled scale
    const double deviation = std::abs(2.0 * w_obs - expectation);
    double extreme = 0.0;
    for (std::size_t s = 0; s <= w_max; ++s)
        if (std::abs(static_cast<double>(s) - expectation) >= deviation - 1e-9)
            extreme += count[n1][s];
    return extreme / subsets;
}

} // namespace

WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                 double alpha) {
    if (a.size() < 5 || b.size() < 5)
        throw std::invalid_argument("wilcoxon_rank_sum: need at least 5 runs per side");
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();
    const std::size_t n = n1 + n2;

    const PooledRanks pooled = pooled_midranks(a, b);
    double w = 0.0;
    for (std::size_t i = 0; i < n1; ++i)
        w += pooled.ranks[i];

    WilcoxonResult result;
    if (pooled.tie_groups.size() == 1) {
        // Every value identical: no evidence either way.
        result.p_value = 1.0;
        result.verdict = Verdict::tie;
        return result;
    }

    if (n1 <= 10 && n2 <= 10) {
        result.p_value = exact_rank_sum_p(pooled.ranks, n1, w);
    } else {
        const double mean_w = static_cast<double>(n1) * (static_cast<double>(n) + 1.0) / 2.0;
        double tie_term = 0.0;
        for (std::size_t t : pooled.tie_groups) {
            const double td = static_cast<double>(t);
            tie_term += td * td * td - td;
        }
        const double nf = static_cast<double>(n);
        const double var_w = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                             ((nf + 1.0) - tie_term / (nf * (nf - 1.0)));
        if (var_w <= 0.0) {
            result.p_value = 1.0;
            result.verdict = Verdict::tie;
            return result;
        }
        const double diff = w - mean_w;
        const double cc = diff > 0.0 ? -0.5 : (diff < 0.0 ? 0.5 : 0.0); // continuity correction
        const double z = (diff + cc) / std::sqrt(var_w);
        result.p_value = std::min(1.0, two_sided_normal_p(z));
    }

    if (result.p_value < alpha) {
        const double mean_a = mean(a);
        const double mean_b = mean(b);
        if (mean_a < mean_b)
            result.verdict = Verdict::plus;
        else if (mean_a > mean_b)
            result.verdict = Verdict::minus;
        else
            result.verdict = Verdict::tie;
    } else {
        result.verdict = Verdict::tie;
    }
    return result;
}

std::vector<double> friedman_ranks(const std::vector<std::vector<double>>& means) {
    const std::size_t algos = means.size();
    if (algos < 2)
        throw std::invalid_argument("friedman_ranks: need at least 2 algorithms");
    const std::size_t fns = means.front().size();
    if (fns < 2)
        throw std::invalid_argument("friedman_ranks: need at least 2 functions");
    for (const auto& row : means)
        if (row.size() != fns)
            throw std::invalid_argument("friedman_ranks: ragged matrix");

    std::vector<double> rank_sum(algos, 0.0);
    for (std::size_t f = 0; f < fns; ++f) {
        std::vector<std::size_t> order(algos);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
            return means[lhs][f] < means[rhs][f];
        });
        std::size_t pos = 0;
        while (pos < algos) {
            std::size_t end = pos + 1;
            while (end < algos && means[order[end]][f] == means[order[pos]][f])
                ++end;
            const double midrank = 0.5 * static_cast<double>(pos + 1 + end);
            for (std::size_t k = pos; k < end; ++k)
                rank_sum[order[k]] += midrank;
            pos = end;
        }
    }
    for (double& r : rank_sum)
        r /= static_cast<double>(fns);
    return rank_sum;
}

double population_diversity(const std::vector<std::vector<double>>& positions) {
    if (positions.empty())
        throw std::invalid_argument("population_diversity: empty population");
    const std::size_t n = positions.size();
    const std::size_t dim = positions.front().size();
    std::vector<double> column(n);
    double total = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < n; ++i)
            column[i] = positions[i][j];
        const double med = median(column);
        double dev = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            dev += std::abs(med - positions[i][j]);
        total += dev / static_cast<double>(n);
    }
    return total / static_cast<double>(dim);
}

std::vector<EePoint> exploration_exploitation(std::span<const double> diversity) {
    std::vector<EePoint> out(diversity.size());
    double peak = 0.0;
    for (double d : diversity)
        peak = std::max(peak, d);
    for (std::size_t t = 0; t < diversity.size(); ++t) {
        const double ratio = peak > 0.0 ? diversity[t] / peak : 0.0;
        out[t].exploration_pct = 100.0 * ratio;
        out[t].exploitation_pct = 100.0 - out[t].exploration_pct;
    }
    return out;
}

std::vector<EePoint> exploration_exploitation(
    const std::vector<std::vector<std::vector<double>>>& snapshots) {
    if (snapshots.empty())
        throw std::invalid_argument("exploration_exploitation: no snapshots");
    std::vector<double> diversity(snapshots.size());
    for (std::size_t t = 0; t < snapshots.size(); ++t)
        diversity[t] = population_diversity(snapshots[t]);
    return exploration_exploitation(diversity);
}

} // namespace mfodbo::stats
