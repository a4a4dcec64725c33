#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mfodbo/rng.hpp"
#include "mfodbo/stats.hpp"

using namespace mfodbo;
using namespace mfodbo::stats;

TEST_CASE("bsw_compare") {
    const std::vector<double> a{1.0, 1.1, 0.9};
    CHECK(bsw_compare(a, a) == Comparison::similar);

    const std::vector<double> lower{1.0, 1.0, 1.0};
    const std::vector<double> higher{2.0, 2.0, 2.0};
    CHECK(bsw_compare(lower, higher) == Comparison::better);
    CHECK(bsw_compare(higher, lower) == Comparison::worse);

    // equal means, tighter spread wins
    const std::vector<double> tight{0.9, 1.0, 1.1};
    const std::vector<double> loose{0.5, 1.0, 1.5};
    CHECK(bsw_compare(tight, loose) == Comparison::better);
    CHECK(bsw_compare(loose, tight) == Comparison::worse);

    CHECK_THROWS(bsw_compare({}, a));
}

// Brute-force oracle: enumerate every n1-subset of the pooled midranks and
// count rank sums at least as extreme as the observed one.
namespace {

double exact_p_brute_force(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n1 = a.size();
    const std::size_t n = a.size() + b.size();
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());

    // midranks
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return pooled[l] < pooled[r]; });
    std::vector<double> rank(n);
    std::size_t pos = 0;
    while (pos < n) {
        std::size_t end = pos + 1;
        while (end < n && pooled[order[end]] == pooled[order[pos]])
            ++end;
        for (std::size_t k = pos; k < end; ++k)
            rank[order[k]] = 0.5 * static_cast<double>(pos + 1 + end);
        pos = end;
    }

    double w_obs = 0.0;
    for (std::size_t i = 0; i < n1; ++i)
        w_obs += rank[i];
    const double expectation = static_cast<double>(n1) * (static_cast<double>(n) + 1.0) / 2.0;
    const double deviation = std::abs(w_obs - expectation);

    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(n1), true);
    std::sort(mask.begin(), mask.end()); // start at the lexicographically first mask
    std::size_t total = 0;
    std::size_t extreme = 0;
    do {
        double w = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i])
                w += rank[i];
        ++total;
        if (std::abs(w - expectation) >= deviation - 1e-9)
            ++extreme;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return static_cast<double>(extreme) / static_cast<double>(total);
}

} // namespace

TEST_CASE("wilcoxon_rank_sum exact path matches brute-force enumeration") {
    SUBCASE("total separation") {
        const std::vector<double> a{1, 2, 3, 4, 5};
        const std::vector<double> b{6, 7, 8, 9, 10};
        const auto result = wilcoxon_rank_sum(a, b);
        const double oracle = exact_p_brute_force(a, b);
        CHECK(result.p_value == doctest::Approx(oracle).epsilon(1e-6));
        CHECK(result.p_value == doctest::Approx(2.0 / 252.0).epsilon(1e-9));
        CHECK(result.verdict == Verdict::plus);
    }

    SUBCASE("random small samples with ties") {
        RngStream rng(555);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t n1 = 5 + static_cast<std::size_t>(rng.uniform01() * 4);
            const std::size_t n2 = 5 + static_cast<std::size_t>(rng.uniform01() * 4);
            std::vector<double> a(n1);
            std::vector<double> b(n2);
            for (auto& v : a)
                v = std::floor(rng.uniform(0.0, 6.0)); // small ints force ties
            for (auto& v : b)
                v = std::floor(rng.uniform(0.0, 6.0));
            const auto result = wilcoxon_rank_sum(a, b);
            const double oracle = exact_p_brute_force(a, b);
            INFO("trial " << trial);
            CHECK(result.p_value == doctest::Approx(oracle).epsilon(1e-6));
        }
    }
}

TEST_CASE("wilcoxon_rank_sum behavior") {
    SUBCASE("identical samples") {
        const std::vector<double> a(30, 3.25);
        const auto result = wilcoxon_rank_sum(a, a);
        CHECK(result.p_value == 1.0);
        CHECK(result.verdict == Verdict::tie);
    }

    SUBCASE("clear separation at n = 30 uses the normal approximation") {
        RngStream rng(8);
        std::vector<double> a(30);
        std::vector<double> b(30);
        for (auto& v : a)
            v = rng.uniform(0.0, 1.0);
        for (auto& v : b)
            v = rng.uniform(10.0, 11.0);
        const auto result = wilcoxon_rank_sum(a, b);
        CHECK(result.p_value < 1e-6);
        CHECK(result.verdict == Verdict::plus);
    }

    SUBCASE("antisymmetry under swapping") {
        RngStream rng(21);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<double> a(12);
            std::vector<double> b(12);
            for (auto& v : a)
                v = rng.uniform(0.0, 2.0);
            for (auto& v : b)
                v = rng.uniform(0.5, 2.5);
            const auto ab = wilcoxon_rank_sum(a, b);
            const auto ba = wilcoxon_rank_sum(b, a);
            CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
            if (ab.verdict == Verdict::plus)
                CHECK(ba.verdict == Verdict::minus);
            if (ab.verdict == Verdict::minus)
                CHECK(ba.verdict == Verdict::plus);
            if (ab.verdict == Verdict::tie)
                CHECK(ba.verdict == Verdict::tie);
        }
    }

    SUBCASE("short samples are rejected") {
        const std::vector<double> four{1, 2, 3, 4};
        const std::vector<double> five{1, 2, 3, 4, 5};
        CHECK_THROWS(wilcoxon_rank_sum(four, five));
    }
}

TEST_CASE("friedman_ranks crafted matrices") {
    SUBCASE("total dominance") {
        const std::vector<std::vector<double>> means{{1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}};
        const auto ranks = friedman_ranks(means);
        CHECK(ranks[0] == doctest::Approx(1.0));
        CHECK(ranks[1] == doctest::Approx(2.0));
    }

    SUBCASE("perfectly mixed") {
        const std::vector<std::vector<double>> means{{1.0, 3.0}, {2.0, 2.0}, {3.0, 1.0}};
        const auto ranks = friedman_ranks(means);
        CHECK(ranks[0] == doctest::Approx(2.0));
        CHECK(ranks[1] == doctest::Approx(2.0));
        CHECK(ranks[2] == doctest::Approx(2.0));
    }

    SUBCASE("tie shares the midrank") {
        const std::vector<std::vector<double>> means{{1.0, 5.0}, {1.0, 7.0}, {9.0, 6.0}};
        const auto ranks = friedman_ranks(means);
        CHECK(ranks[0] == doctest::Approx((1.5 + 1.0) / 2.0));
        CHECK(ranks[1] == doctest::Approx((1.5 + 3.0) / 2.0));
        CHECK(ranks[2] == doctest::Approx((3.0 + 2.0) / 2.0));
    }

    SUBCASE("rank sum equals k(k+1)/2 without ties") {
        const std::vector<std::vector<double>> means{
            {3.0, 1.0, 4.0}, {1.0, 5.0, 9.0}, {2.0, 6.0, 5.0}, {7.0, 2.0, 1.0}};
        const auto ranks = friedman_ranks(means);
        const double sum = std::accumulate(ranks.begin(), ranks.end(), 0.0);
        CHECK(sum == doctest::Approx(4.0 * 5.0 / 2.0));
    }

    SUBCASE("rank-based: invariant under monotone transforms") {
        const std::vector<std::vector<double>> means{
            {0.1, 0.4, 0.2}, {0.3, 0.2, 0.7}, {0.6, 0.9, 0.1}};
        std::vector<std::vector<double>> transformed = means;
        for (auto& row : transformed)
            for (auto& v : row)
                v = std::exp(3.0 * v) + 1.0;
        CHECK(friedman_ranks(means) == friedman_ranks(transformed));
    }

    CHECK_THROWS(friedman_ranks({{1.0, 2.0}}));
    CHECK_THROWS(friedman_ranks({{1.0}, {2.0}}));
    CHECK_THROWS(friedman_ranks({{1.0, 2.0}, {1.0}}));
}

TEST_CASE("population diversity and the exploration split") {
    SUBCASE("two members at +-1 in one dimension") {
        CHECK(population_diversity({{-1.0}, {1.0}}) == doctest::Approx(1.0));
    }

    SUBCASE("identical members have zero diversity") {
        CHECK(population_diversity({{2.0, 3.0}, {2.0, 3.0}, {2.0, 3.0}}) == 0.0);
    }

    SUBCASE("percentages always sum to 100 and anchor at the peak") {
        const std::vector<double> diversity{0.5, 2.0, 1.0, 0.25, 0.0};
        const auto ee = exploration_exploitation(diversity);
        REQUIRE(ee.size() == diversity.size());
        for (const auto& point : ee)
            CHECK(point.exploration_pct + point.exploitation_pct == doctest::Approx(100.0));
        CHECK(ee[1].exploration_pct == doctest::Approx(100.0));
        CHECK(ee[4].exploration_pct == doctest::Approx(0.0));
        CHECK(ee[4].exploitation_pct == doctest::Approx(100.0));
    }

    SUBCASE("single-member population maps to zero exploration") {
        const std::vector<std::vector<std::vector<double>>> snapshots{
            {{1.0, 2.0}}, {{3.0, 4.0}}};
        const auto ee = exploration_exploitation(snapshots);
        for (const auto& point : ee) {
            CHECK(point.exploration_pct == 0.0);
            CHECK(point.exploitation_pct == 100.0);
        }
    }
}

TEST_CASE("summary helpers") {
    const std::vector<double> odd{5.0, 1.0, 3.0};
    CHECK(mean(odd) == doctest::Approx(3.0));
    CHECK(median(odd) == doctest::Approx(3.0));
    const std::vector<double> even{4.0, 1.0, 3.0, 2.0};
    CHECK(median(even) == doctest::Approx(2.5));
    const std::vector<double> spread{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
    CHECK(sample_std(spread) == doctest::Approx(std::sqrt(32.0 / 7.0)));
}
