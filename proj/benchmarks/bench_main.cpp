// Self-timed micro-benchmarks for the hot paths: engine iterations, residual
// evaluation, chaotic sequence generation and memory-weight computation.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "mfodbo/benchfns.hpp"
#include "mfodbo/chaos.hpp"
#include "mfodbo/dbo.hpp"
#include "mfodbo/fractional.hpp"
#include "mfodbo/pv.hpp"

using namespace mfodbo;
using Clock = std::chrono::steady_clock;

namespace {

double g_sink = 0.0; // defeats dead-code elimination

template <typename Fn>
void bench(const std::string& name, std::size_t units, const char* unit_label, Fn&& fn) {
    // one warm-up, then best of three timed repetitions
    fn();
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
        const auto start = Clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(Clock::now() - start).count());
    }
    std::printf("%-34s %10.3f ms   %12.0f %s/s\n", name.c_str(), best * 1e3,
                static_cast<double>(units) / best, unit_label);
}

} // namespace

int main() {
    std::printf("%-34s %13s   %s\n", "benchmark", "best time", "throughput");

    {
        const auto objective = benchfns::to_objective(benchfns::builtin("rastrigin", 10));
        dbo::OptimizerConfig config;
        config.iterations = 500;
        config.seed = 1;
        config.variants = dbo::VariantFlags::classic();
        bench("classic engine, 10-D, 500 iters", 500, "iter", [&] {
            g_sink += dbo::run(objective, config).best.fitness;
        });
        config.variants = dbo::VariantFlags::full();
        bench("full variant, 10-D, 500 iters", 500, "iter", [&] {
            g_sink += dbo::run(objective, config).best.fitness;
        });
    }

    {
        const pv::IvDataset data = pv::load_iv_csv(std::string(MFODBO_DATA_DIR) +
                                                   "/rtc_france.csv");
        const std::vector<double> x{0.76078, 0.32302, 0.03638, 53.71795, 1.48118};
        constexpr std::size_t reps = 200000;
        bench("sdm rmse over 26 points", reps, "eval", [&] {
            for (std::size_t k = 0; k < reps; ++k)
                g_sink += pv::rmse(x, data, pv::ModelKind::sdm);
        });
    }

    {
        const chaos::FolcParams params(3.0, 0.7, 0.37);
        bench("folc sequence, 10k values", 10000, "value", [&] {
            g_sink += chaos::folc_sequence(params, 10000).back();
        });
    }

    {
        bench("gl coefficients, m = 64", 100000, "call", [&] {
            for (int k = 0; k < 100000; ++k)
                g_sink += fractional::gl_coefficients(0.1, 64).weights.back();
        });
    }

    std::printf("(sink %.3g)\n", g_sink);
    return 0;
}
