#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mfodbo/chaos.hpp"
#include "mfodbo/fractional.hpp"
#include "mfodbo/rng.hpp"
#include "mfodbo/types.hpp"

namespace mfodbo::dbo {

/// How a population of size N splits into the four behavioral roles.
/// N = 30 gives the reference split (6, 6, 7, 11); other sizes use a
/// largest-remainder proportional split of 6:6:7:11.
struct RoleCounts {
    int rollers = 0;
    int brood_balls = 0;
    int foragers = 0;
    int thieves = 0;

    int total() const { return rollers + brood_balls + foragers + thieves; }
};

RoleCounts partition_roles(int n);

/// Scalar knobs of the four update rules.
struct DboParams {
    double k_deflection = 0.1; // (0, 0.2]
    double b_step = 0.3;       // [0, 1]
    double d_thief = 0.5;      // > 0
    double roll_prob = 0.9;    // probability of the rolling rule vs the dance
    double alpha_prob = 0.5;   // probability that alpha = +1
};

/// Which of the three enhancements are active.
/// (false, false, false) is the classic engine; all three true is the
/// memory-enhanced fractional-order variant. Single-flag combinations are
/// the ablation variants.
struct VariantFlags {
    bool use_folc_init = false;
    bool use_fo_roll = false;
    bool use_chaotic_perturb = false;

    static VariantFlags classic() { return {false, false, false}; }
    static VariantFlags full() { return {true, true, true}; }
};

/// Dynamic spawning/foraging box around an anchor, always inside the space.
struct RegionBounds {
    std::vector<double> lower;
    std::vector<double> upper;
};

/// Shrinking box around `anchor`: with R = 1 - t/t_max the corners are
/// anchor*(1-R) and anchor*(1+R), swapped per-dimension where the anchor is
/// negative and clamped to the space. Collapses to {anchor} at t = t_max.
RegionBounds spawning_region(std::span<const double> anchor, int t, int t_max,
                             const SearchSpace& space);

// --- Pure update kernels (all coefficients explicit, result clamped) ---

/// x + alpha * k * x_prev + b * |x - worst|
std::vector<double> roll_step(std::span<const double> x, std::span<const double> x_prev,
                              std::span<const double> worst, double alpha, double k, double b,
                              const SearchSpace& space);

/// x + tan(theta) * |x - x_prev|; returns x unchanged when theta is within
/// 1e-12 of {0, pi/2, pi} where the tangent is useless or singular.
std::vector<double> dance_step(std::span<const double> x, std::span<const double> x_prev,
                               double theta, const SearchSpace& space);

/// local_best + b1 o (x - region.lower) + b2 o (x - region.upper)
std::vector<double> brood_step(std::span<const double> x, std::span<const double> local_best,
                               const RegionBounds& region, std::span<const double> b1,
                               std::span<const double> b2, const SearchSpace& space);

/// x + c1 * (x - region.lower) + c2 * (x - region.upper)
std::vector<double> forage_step(std::span<const double> x, const RegionBounds& region, double c1,
                                double c2, const SearchSpace& space);

/// global_best + d * g o (|x - local_best| + |x - global_best|)
std::vector<double> steal_step(std::span<const double> x, std::span<const double> local_best,
                               std::span<const double> global_best, double d,
                               std::span<const double> g, const SearchSpace& space);

// --- Drawing wrappers (fixed draw order; see the engine notes in dbo.cpp) ---

std::vector<double> roll_update(std::span<const double> x, std::span<const double> x_prev,
                                std::span<const double> worst, const DboParams& params,
                                const SearchSpace& space, RngStream& rng);

std::vector<double> dance_update(std::span<const double> x, std::span<const double> x_prev,
                                 const SearchSpace& space, RngStream& rng);

std::vector<double> brood_update(std::span<const double> x, std::span<const double> local_best,
                                 const RegionBounds& region, const SearchSpace& space,
                                 RngStream& rng);

std::vector<double> forage_update(std::span<const double> x, const RegionBounds& region,
                                  const SearchSpace& space, RngStream& rng);

std::vector<double> steal_update(std::span<const double> x, std::span<const double> local_best,
                                 std::span<const double> global_best, const DboParams& params,
                                 const SearchSpace& space, RngStream& rng);

/// Everything one run needs. Defaults mirror the reference setup:
/// 30 agents split 6/6/7/11, 500 iterations, delta = 0.1, m = 4, K = 20.
struct OptimizerConfig {
    int population = 30;
    RoleCounts roles = partition_roles(30);
    int iterations = 500;
    std::uint64_t seed = 0;
    VariantFlags variants;
    DboParams params;

    double delta = 0.1;     // fractional order, (0, 1]
    int memory = 4;         // GL memory depth m
    chaos::FolcParams folc; // initialization map (seed_value drawn per run)
    double perturb_intensity = 20.0;
    double perturb_mu = 4.0;
    /// The literal reading applies the elite perturbation once per individual
    /// turn; set this to collapse it to once per iteration for ablations.
    bool perturb_once_per_iteration = false;
};

void validate(const OptimizerConfig& config, std::size_t dim);

/// Per-run record: one entry per iteration. Exploration/exploitation are
/// percentages of the run's peak population diversity and always sum to 100.
struct RunTrace {
    double initial_best_fitness = 0.0;
    std::vector<double> best_fitness;
    std::vector<double> diversity;
    std::vector<double> exploration_pct;
    std::vector<double> exploitation_pct;
    Candidate best;
    std::uint64_t evaluations = 0;
};

/// Runs the engine selected by `config.variants`. Strictly sequential; two
/// calls with the same config produce bit-identical traces.
RunTrace run(const ObjectiveSpec& objective, const OptimizerConfig& config);

} // namespace mfodbo::dbo
