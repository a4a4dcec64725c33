#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mfodbo/fractional.hpp"
#include "mfodbo/rng.hpp"

using namespace mfodbo;
using namespace mfodbo::fractional;

namespace {

// Independent route through the gamma function for the k-th memory weight
// (k >= 1): -(-1)^k G(delta+1) / (G(k+1) G(delta-k+1)), with the sign of the
// gamma at negative arguments recovered via the reflection formula.
double gamma_route_weight(double delta, int k) {
    if (delta == 1.0)
        return k == 1 ? 1.0 : 0.0; // G(delta-k+1) hits a pole; 1/G -> 0
    const double a = delta - k + 1.0;
    double log_abs_gamma_a;
    double sign_gamma_a = 1.0;
    if (a > 0.0) {
        log_abs_gamma_a = std::lgamma(a);
    } else {
        const double s = std::sin(std::numbers::pi * a);
        log_abs_gamma_a = std::log(std::numbers::pi / std::abs(s)) - std::lgamma(1.0 - a);
        sign_gamma_a = s < 0.0 ? -1.0 : 1.0;
    }
    const double magnitude =
        std::exp(std::lgamma(delta + 1.0) - std::lgamma(k + 1.0) - log_abs_gamma_a);
    return -std::pow(-1.0, k) * sign_gamma_a * magnitude;
}

} // namespace

TEST_CASE("gl_coefficients reference values") {
    SUBCASE("delta = 1 collapses to the one-step difference") {
        const auto c = gl_coefficients(1.0, 4);
        REQUIRE(c.weights.size() == 4);
        CHECK(c.weights[0] == 1.0);
        CHECK(c.weights[1] == 0.0);
        CHECK(c.weights[2] == 0.0);
        CHECK(c.weights[3] == 0.0);
    }

    SUBCASE("delta = 0.1, m = 4") {
        const auto c = gl_coefficients(0.1, 4);
        CHECK(c.weights[0] == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(c.weights[1] == doctest::Approx(0.045).epsilon(1e-12));
        CHECK(c.weights[2] == doctest::Approx(0.0285).epsilon(1e-12));
        CHECK(c.weights[3] == doctest::Approx(0.0206625).epsilon(1e-12));
        const double sum = c.weights[0] + c.weights[1] + c.weights[2] + c.weights[3];
        CHECK(sum == doctest::Approx(0.1941625).epsilon(1e-12));
    }

    SUBCASE("delta = 0.5, m = 2") {
        const auto c = gl_coefficients(0.5, 2);
        CHECK(c.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(c.weights[1] == doctest::Approx(0.125).epsilon(1e-12));
    }
}

TEST_CASE("gl_coefficients matches the direct gamma route") {
    for (int d = 1; d <= 10; ++d) {
        const double delta = 0.1 * d;
        const auto c = gl_coefficients(delta, 20);
        for (int k = 1; k <= 20; ++k) {
            const double expected = gamma_route_weight(delta, k);
            INFO("delta=" << delta << " k=" << k);
            CHECK(c.weights[k - 1] == doctest::Approx(expected).epsilon(1e-12));
            CHECK(c.weights[k - 1] >= 0.0);
        }
    }
}

TEST_CASE("gl_coefficients validation") {
    CHECK_THROWS(gl_coefficients(0.0, 4));
    CHECK_THROWS(gl_coefficients(1.2, 4));
    CHECK_THROWS(gl_coefficients(-0.1, 4));
    CHECK_THROWS(gl_coefficients(0.5, 0));
}

TEST_CASE("history buffer ring semantics") {
    HistoryBuffer h(3, {1.0, 10.0});
    CHECK(h.memory() == 3);
    CHECK(h.dim() == 2);
    // warm-up: every slot equals the initial position
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(h.at(k)[0] == 1.0);
        CHECK(h.at(k)[1] == 10.0);
    }
    const std::vector<double> second{2.0, 20.0};
    h.push(second);
    CHECK(h.at(0)[0] == 2.0);
    CHECK(h.at(1)[0] == 1.0);
    CHECK(h.at(2)[0] == 1.0);
    const std::vector<double> third{3.0, 30.0};
    const std::vector<double> fourth{4.0, 40.0};
    h.push(third);
    h.push(fourth);
    CHECK(h.at(0)[0] == 4.0);
    CHECK(h.at(1)[0] == 3.0);
    CHECK(h.at(2)[0] == 2.0);
    CHECK(h.at(0)[1] == 40.0);
    CHECK_THROWS(h.at(3));
    CHECK_THROWS(h.push(std::vector<double>{1.0}));
}

TEST_CASE("fo_roll_update arithmetic") {
    const SearchSpace wide = SearchSpace::cube(1, -100.0, 100.0);

    SUBCASE("single surviving memory term") {
        // history = [x(t)=1, 0, 0, 0], delta = 0.1, x_prev = 0, worst = 1
        // so both the deflection and distance terms vanish.
        HistoryBuffer h(4, {0.0});
        h.push(std::vector<double>{0.0});
        h.push(std::vector<double>{0.0});
        h.push(std::vector<double>{1.0});
        const auto c = gl_coefficients(0.1, 4);
        const std::vector<double> prev{0.0};
        const std::vector<double> worst{1.0};
        const auto next = fo_roll_update(h, prev, worst, c, 1.0, 0.1, 0.0, wide);
        CHECK(next[0] == doctest::Approx(0.1).epsilon(1e-15));
    }

    SUBCASE("full example at delta = 0.1") {
        // history = [2, 1, 1, 1], alpha = 1, k = 0.1, b = 0.3, worst = 5:
        // 0.1*2 + 0.045 + 0.0285 + 0.0206625 + 0.1*1 + 0.3*3 = 1.2941625
        HistoryBuffer h(4, {1.0});
        h.push(std::vector<double>{1.0});
        h.push(std::vector<double>{1.0});
        h.push(std::vector<double>{2.0});
        const auto c = gl_coefficients(0.1, 4);
        const std::vector<double> prev{1.0};
        const std::vector<double> worst{5.0};
        const auto next = fo_roll_update(h, prev, worst, c, 1.0, 0.1, 0.3, wide);
        CHECK(next[0] == doctest::Approx(1.2941625).epsilon(1e-12));
    }

    SUBCASE("result is clamped") {
        HistoryBuffer h(2, {4.0});
        const auto c = gl_coefficients(1.0, 2);
        const std::vector<double> prev{4.0};
        const std::vector<double> worst{0.0};
        const SearchSpace tight = SearchSpace::cube(1, 0.0, 5.0);
        // 4 + 0.2*4 + 1.0*4 = 8.8 -> clamped to 5
        const auto next = fo_roll_update(h, prev, worst, c, 1.0, 0.2, 1.0, tight);
        CHECK(next[0] == 5.0);
    }

    SUBCASE("deterministic: same inputs, same output") {
        HistoryBuffer h(4, {0.7});
        h.push(std::vector<double>{0.9});
        const auto c = gl_coefficients(0.3, 4);
        const std::vector<double> prev{0.7};
        const std::vector<double> worst{-0.2};
        const auto a = fo_roll_update(h, prev, worst, c, -1.0, 0.15, 0.4, wide);
        const auto b = fo_roll_update(h, prev, worst, c, -1.0, 0.15, 0.4, wide);
        CHECK(a == b);
    }
}

TEST_CASE("delta = 1 reduces bit-exactly to the classic rolling rule") {
    // Mirrors the classic kernel's statement shape: acc = x; acc += a*k*prev;
    // acc += b*|x - worst|.
    const SearchSpace space = SearchSpace::cube(3, -10.0, 10.0);
    const auto c = gl_coefficients(1.0, 4);
    RngStream rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> x(3);
        std::vector<double> prev(3);
        std::vector<double> worst(3);
        for (std::size_t j = 0; j < 3; ++j) {
            x[j] = rng.uniform(-10.0, 10.0);
            prev[j] = rng.uniform(-10.0, 10.0);
            worst[j] = rng.uniform(-10.0, 10.0);
        }
        HistoryBuffer h(4, prev);
        h.push(x);
        const double alpha = rng.uniform01() < 0.5 ? 1.0 : -1.0;
        const auto fo = fo_roll_update(h, prev, worst, c, alpha, 0.1, 0.3, space);
        for (std::size_t j = 0; j < 3; ++j) {
            double acc = x[j];
            acc += alpha * 0.1 * prev[j];
            acc += 0.3 * std::abs(x[j] - worst[j]);
            acc = std::min(space.upper[j], std::max(space.lower[j], acc));
            CHECK(fo[j] == acc);
        }
    }
}
