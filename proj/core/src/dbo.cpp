#include "mfodbo/dbo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "mfodbo/stats.hpp"

// Engine notes
// ------------
// The RNG draw order is part of the run's contract:
//   init:        population * dim uniforms, member-major (FOLC mode draws one
//                map seed instead, then no per-coordinate uniforms);
//                +1 logistic seed when the elite perturbation is enabled
//   per roller:  1 uniform (branch), then 1 uniform (alpha sign) or
//                1 uniform (dance angle)
//   per brood:   dim pairs (b1[j], b2[j])
//   per forager: 1 normal, 1 uniform
//   per thief:   dim normals
//   perturbation: 1 uniform (weight); the chaos vector advances the logistic
//                map, not the stream
// Iteration-start snapshots of the best/worst members feed every update rule
// of that iteration; the running global best moves as soon as a member (or an
// accepted perturbation) improves it.

namespace mfodbo::dbo {

RoleCounts partition_roles(int n) {
    if (n < 4)
        throw std::invalid_argument("partition_roles: need at least 4 agents");
    if (n == 30)
        return {6, 6, 7, 11};
    static constexpr std::array<double, 4> kShares = {6.0 / 30.0, 6.0 / 30.0, 7.0 / 30.0,
                                                      11.0 / 30.0};
    std::array<int, 4> counts{};
    std::array<double, 4> remainder{};
    int assigned = 0;
    for (std::size_t r = 0; r < 4; ++r) {
        const double quota = kShares[r] * static_cast<double>(n);
        counts[r] = static_cast<int>(quota);
        remainder[r] = quota - static_cast<double>(counts[r]);
        assigned += counts[r];
    }
    // Largest remainder first; stable role order breaks ties.
    std::array<std::size_t, 4> order = {0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned)
        ++counts[order[i % 4]];
    return {counts[0], counts[1], counts[2], counts[3]};
}

RegionBounds spawning_region(std::span<const double> anchor, int t, int t_max,
                             const SearchSpace& space) {
    if (t < 0 || t > t_max)
        throw std::invalid_argument("spawning_region: t outside [0, t_max]");
    const double radius = 1.0 - static_cast<double>(t) / static_cast<double>(t_max);
    RegionBounds region;
    region.lower.resize(anchor.size());
    region.upper.resize(anchor.size());
    for (std::size_t j = 0; j < anchor.size(); ++j) {
        double lo = anchor[j] * (1.0 - radius);
        double hi = anchor[j] * (1.0 + radius);
        if (lo > hi)
            std::swap(lo, hi); // negative anchor flips the corners
        region.lower[j] = std::min(space.upper[j], std::max(space.lower[j], lo));
        region.upper[j] = std::min(space.upper[j], std::max(space.lower[j], hi));
    }
    return region;
}

std::vector<double> roll_step(std::span<const double> x, std::span<const double> x_prev,
                              std::span<const double> worst, double alpha, double k, double b,
                              const SearchSpace& space) {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        // Same statement shape as the memory kernel's tail; keeps the
        // delta = 1 reduction bit-exact.
        double acc = x[j];
        acc += alpha * k * x_prev[j];
        acc += b * std::abs(x[j] - worst[j]);
        out[j] = acc;
    }
    clamp_in_place(out, space);
    return out;
}

std::vector<double> dance_step(std::span<const double> x, std::span<const double> x_prev,
                               double theta, const SearchSpace& space) {
    constexpr double kSingularTol = 1e-12;
    const double half_pi = std::numbers::pi / 2.0;
    if (std::abs(theta) < kSingularTol || std::abs(theta - half_pi) < kSingularTol ||
        std::abs(theta - std::numbers::pi) < kSingularTol)
        return {x.begin(), x.end()};
    const double tan_theta = std::tan(theta);
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = x[j] + tan_theta * std::abs(x[j] - x_prev[j]);
    clamp_in_place(out, space);
    return out;
}

std::vector<double> brood_step(std::span<const double> x, std::span<const double> local_best,
                               const RegionBounds& region, std::span<const double> b1,
                               std::span<const double> b2, const SearchSpace& space) {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = local_best[j] + b1[j] * (x[j] - region.lower[j]) +
                 b2[j] * (x[j] - region.upper[j]);
    clamp_in_place(out, space);
    return out;
}

std::vector<double> forage_step(std::span<const double> x, const RegionBounds& region, double c1,
                                double c2, const SearchSpace& space) {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = x[j] + c1 * (x[j] - region.lower[j]) + c2 * (x[j] - region.upper[j]);
    clamp_in_place(out, space);
    return out;
}

std::vector<double> steal_step(std::span<const double> x, std::span<const double> local_best,
                               std::span<const double> global_best, double d,
                               std::span<const double> g, const SearchSpace& space) {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = global_best[j] +
                 d * g[j] * (std::abs(x[j] - local_best[j]) + std::abs(x[j] - global_best[j]));
    clamp_in_place(out, space);
    return out;
}

std::vector<double> roll_update(std::span<const double> x, std::span<const double> x_prev,
                                std::span<const double> worst, const DboParams& params,
                                const SearchSpace& space, RngStream& rng) {
    const double alpha = rng.uniform01() < params.alpha_prob ? 1.0 : -1.0;
    return roll_step(x, x_prev, worst, alpha, params.k_deflection, params.b_step, space);
}

std::vector<double> dance_update(std::span<const double> x, std::span<const double> x_prev,
                                 const SearchSpace& space, RngStream& rng) {
    const double theta = rng.uniform01() * std::numbers::pi;
    return dance_step(x, x_prev, theta, space);
}

std::vector<double> brood_update(std::span<const double> x, std::span<const double> local_best,
                                 const RegionBounds& region, const SearchSpace& space,
                                 RngStream& rng) {
    std::vector<double> b1(x.size());
    std::vector<double> b2(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        b1[j] = rng.uniform01();
        b2[j] = rng.uniform01();
    }
    return brood_step(x, local_best, region, b1, b2, space);
}

std::vector<double> forage_update(std::span<const double> x, const RegionBounds& region,
                                  const SearchSpace& space, RngStream& rng) {
    const double c1 = rng.normal01();
    const double c2 = rng.uniform01();
    return forage_step(x, region, c1, c2, space);
}

std::vector<double> steal_update(std::span<const double> x, std::span<const double> local_best,
                                 std::span<const double> global_best, const DboParams& params,
                                 const SearchSpace& space, RngStream& rng) {
    std::vector<double> g(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        g[j] = rng.normal01();
    return steal_step(x, local_best, global_best, params.d_thief, g, space);
}

void validate(const OptimizerConfig& config, std::size_t dim) {
    if (dim == 0)
        throw std::invalid_argument("OptimizerConfig: zero-dimensional objective");
    if (config.population < 4)
        throw std::invalid_argument("OptimizerConfig: population must be >= 4");
    if (config.roles.total() != config.population)
        throw std::invalid_argument("OptimizerConfig: role counts must sum to the population");
    if (config.roles.rollers < 0 || config.roles.brood_balls < 0 || config.roles.foragers < 0 ||
        config.roles.thieves < 0)
        throw std::invalid_argument("OptimizerConfig: negative role count");
    if (config.iterations < 0)
        throw std::invalid_argument("OptimizerConfig: negative iteration budget");
    if (!(config.delta > 0.0) || !(config.delta <= 1.0))
        throw std::invalid_argument("OptimizerConfig: delta must be in (0, 1]");
    if (config.memory < 1)
        throw std::invalid_argument("OptimizerConfig: memory depth must be >= 1");
    if (!(config.params.k_deflection > 0.0) || !(config.params.k_deflection <= 0.2))
        throw std::invalid_argument("OptimizerConfig: k_deflection must be in (0, 0.2]");
    if (!(config.params.b_step >= 0.0) || !(config.params.b_step <= 1.0))
        throw std::invalid_argument("OptimizerConfig: b_step must be in [0, 1]");
    if (!(config.params.d_thief > 0.0))
        throw std::invalid_argument("OptimizerConfig: d_thief must be > 0");
}

namespace {

Candidate evaluate_one(std::vector<double> position, const ObjectiveSpec& objective,
                       std::uint64_t& evaluations) {
    Candidate c;
    c.position = std::move(position);
    const double f = objective.evaluate(c.position);
    ++evaluations;
    if (!std::isfinite(f)) {
        c.fitness = std::numeric_limits<double>::infinity();
        c.penalized = true;
    } else {
        c.fitness = f;
    }
    return c;
}

double folc_map_seed(const chaos::FolcParams& folc, RngStream& rng) {
    // Uniform over (0.1, 0.9), redrawn away from the map's fixed point.
    for (;;) {
        const double seed = 0.1 + 0.8 * rng.uniform01();
        if (std::abs(seed - (1.0 - 1.0 / folc.mu)) > 1e-9)
            return seed;
    }
}

} // namespace

RunTrace run(const ObjectiveSpec& objective, const OptimizerConfig& config) {
    const std::size_t dim = objective.space.dim();
    validate(config, dim);
    const SearchSpace& space = objective.space;
    const int n = config.population;
    const int t_max = config.iterations;

    RngStream rng(config.seed);
    RunTrace trace;

    // --- Initialization ---
    Population pop;
    if (config.variants.use_folc_init) {
        chaos::FolcParams folc(config.folc.mu, config.folc.v, folc_map_seed(config.folc, rng));
        pop = chaos::folc_initialize(space, static_cast<std::size_t>(n), folc);
    } else {
        pop.members.resize(static_cast<std::size_t>(n));
        for (auto& member : pop.members) {
            member.position.resize(dim);
            for (std::size_t j = 0; j < dim; ++j)
                member.position[j] = space.lower[j] + rng.uniform01() * space.range(j);
        }
    }

    std::optional<chaos::LogisticMapState> perturb_map;
    std::optional<chaos::PerturbationParams> perturb_params;
    if (config.variants.use_chaotic_perturb) {
        perturb_map = chaos::logistic_from_rng(config.perturb_mu, rng);
        // Short budgets cap K so the 0 < K < t_max invariant still holds.
        const int t_eff = std::max(t_max, 1);
        const double k_eff =
            std::min(config.perturb_intensity, 0.5 * static_cast<double>(t_eff));
        perturb_params.emplace(k_eff, t_eff, config.perturb_mu);
    }

    std::uint64_t evaluations = 0;
    for (auto& member : pop.members)
        member = evaluate_one(std::move(member.position), objective, evaluations);
    {
        auto by_fitness =
            [](const Candidate& a, const Candidate& b) { return a.fitness < b.fitness; };
        const auto [lo, hi] = std::minmax_element(pop.members.begin(), pop.members.end(),
                                                  by_fitness);
        pop.local_best = *lo;
        pop.worst_current = *hi;
        pop.best_so_far = *lo;
    }
    trace.initial_best_fitness = pop.best_so_far.fitness;

    std::vector<std::vector<double>> previous(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        previous[static_cast<std::size_t>(i)] = pop.members[static_cast<std::size_t>(i)].position;

    const fractional::GlCoefficients coeffs =
        fractional::gl_coefficients(config.delta, static_cast<std::size_t>(config.memory));
    std::vector<fractional::HistoryBuffer> history;
    if (config.variants.use_fo_roll) {
        history.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            history.emplace_back(static_cast<std::size_t>(config.memory),
                                 pop.members[static_cast<std::size_t>(i)].position);
    }

    trace.best_fitness.reserve(static_cast<std::size_t>(t_max));
    trace.diversity.reserve(static_cast<std::size_t>(t_max));

    const int roller_end = config.roles.rollers;
    const int brood_end = roller_end + config.roles.brood_balls;
    const int forager_end = brood_end + config.roles.foragers;

    const auto try_perturbation = [&](int t) {
        const Candidate cp = chaos::chaotic_perturb(pop.best_so_far, t, *perturb_params,
                                                    *perturb_map, space, rng);
        const Candidate evaluated = evaluate_one(cp.position, objective, evaluations);
        if (evaluated.fitness < pop.best_so_far.fitness)
            pop.best_so_far = evaluated;
    };

    for (int t = 1; t <= t_max; ++t) {
        // Iteration-start snapshots drive every update rule of this pass.
        const auto by_fitness =
            [](const Candidate& a, const Candidate& b) { return a.fitness < b.fitness; };
        const auto [lo, hi] = std::minmax_element(pop.members.begin(), pop.members.end(),
                                                  by_fitness);
        pop.local_best = *lo;
        pop.worst_current = *hi;
        const std::vector<double> local_best = pop.local_best.position;
        const std::vector<double> worst = pop.worst_current.position;
        const std::vector<double> global_best = pop.best_so_far.position;

        const RegionBounds brood_region = spawning_region(local_best, t, t_max, space);
        const RegionBounds forage_region = spawning_region(global_best, t, t_max, space);

        for (int i = 0; i < n; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            Candidate& member = pop.members[idx];
            std::vector<double> next;
            if (i < roller_end) {
                if (rng.uniform01() < config.params.roll_prob) {
                    if (config.variants.use_fo_roll) {
                        const double alpha =
                            rng.uniform01() < config.params.alpha_prob ? 1.0 : -1.0;
                        next = fractional::fo_roll_update(history[idx], previous[idx], worst,
                                                          coeffs, alpha,
                                                          config.params.k_deflection,
                                                          config.params.b_step, space);
                    } else {
                        next = roll_update(member.position, previous[idx], worst, config.params,
                                           space, rng);
                    }
                } else {
                    next = dance_update(member.position, previous[idx], space, rng);
                }
            } else if (i < brood_end) {
                next = brood_update(member.position, local_best, brood_region, space, rng);
            } else if (i < forager_end) {
                next = forage_update(member.position, forage_region, space, rng);
            } else {
                next = steal_update(member.position, local_best, global_best, config.params,
                                    space, rng);
            }

            previous[idx] = std::move(member.position);
            member = evaluate_one(std::move(next), objective, evaluations);
            if (config.variants.use_fo_roll)
                history[idx].push(member.position);
            if (member.fitness < pop.best_so_far.fitness)
                pop.best_so_far = member;

            if (config.variants.use_chaotic_perturb && !config.perturb_once_per_iteration)
                try_perturbation(t);
        }
        if (config.variants.use_chaotic_perturb && config.perturb_once_per_iteration)
            try_perturbation(t);

        trace.best_fitness.push_back(pop.best_so_far.fitness);
        std::vector<std::vector<double>> snapshot;
        snapshot.reserve(pop.members.size());
        for (const auto& member : pop.members)
            snapshot.push_back(member.position);
        trace.diversity.push_back(stats::population_diversity(snapshot));
    }

    const auto ee = stats::exploration_exploitation(trace.diversity);
    trace.exploration_pct.resize(ee.size());
    trace.exploitation_pct.resize(ee.size());
    for (std::size_t t = 0; t < ee.size(); ++t) {
        trace.exploration_pct[t] = ee[t].exploration_pct;
        trace.exploitation_pct[t] = ee[t].exploitation_pct;
    }
    trace.best = pop.best_so_far;
    trace.evaluations = evaluations;
    return trace;
}

} // namespace mfodbo::dbo
