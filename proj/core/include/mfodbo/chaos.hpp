#pragma once

#include <cstddef>
#include <vector>

#include "mfodbo/rng.hpp"
#include "mfodbo/types.hpp"

namespace mfodbo::chaos {

/// Logistic map state: value' = mu * value * (1 - value).
/// The constructor rejects seeds on degenerate orbits (0, 1, the map's fixed
/// point, and for mu = 4 the finite preimages 0.25, 0.5, 0.75 that cascade
/// into it), so stepping preserves (0, 1).
struct LogisticMapState {
    double value;
    double mu;

    LogisticMapState(double value, double mu);
};

LogisticMapState logistic_step(LogisticMapState state);

/// Builds a logistic map whose seed is drawn from `rng`, redrawing until it
/// clears the degenerate set.
LogisticMapState logistic_from_rng(double mu, RngStream& rng);

/// Fractional-order logistic map parameters. The memory kernel weights are
/// the gamma ratios G(s + v) / G(s + 1).
///
/// Defaults: mu = 4.0 (full-chaos regime, like the perturbation map) and
/// v = 0.3, the pair with the most uniform fold coverage of (0, 1) in a
/// 20-bin chi-square scan over the (0,4] x (0,1] grid. Uniform coverage is
/// the whole point of chaotic initialization, so the defaults are chosen by
/// that measure.
struct FolcParams {
    double mu = 4.0;
    double v = 0.3;
    double seed_value = 0.37;

    FolcParams() = default;
    FolcParams(double mu, double v, double seed_value);
};

/// Emits `length` values of the fractional-order logistic sequence.
/// out[0] == seed_value; each subsequent value is
///   fold(seed + mu/G(v) * sum_{j=1..t} w_{t-j} * x_{j-1} * (1 - x_{j-1}))
/// where fold(x) = x - floor(x) keeps the emitted value in (0, 1); an exact
/// zero after folding is remapped to the previous in-range value. The kernel
/// weights are computed by the stable recurrence w_s = w_{s-1} * (s-1+v) / s
/// with w_0 = G(v); direct gamma evaluation would overflow past s ~ 170.
std::vector<double> folc_sequence(const FolcParams& params, std::size_t length);

/// Spreads `n` candidates over the box through one continuous fractional
/// chaotic sequence of length n * dim:
///   x[i][j] = lower[j] + seq[i*dim + j] * (upper[j] - lower[j]).
Population folc_initialize(const SearchSpace& space, std::size_t n, const FolcParams& params);

/// Elite-perturbation controls. `intensity` is the K divisor inside the
/// log-sigmoid schedule; larger K stretches the early high-perturbation phase.
struct PerturbationParams {
    double intensity = 20.0;
    int t_max = 500;
    double mu = 4.0;

    PerturbationParams() = default;
    PerturbationParams(double intensity, int t_max, double mu);
};

/// xi(t) = logsig((t_max/2 - t) / K) * u,  u ~ U(0,1).
/// Decays from ~u toward ~0 as t crosses t_max/2, so perturbations shrink
/// over the run. Consumes exactly one uniform draw.
double perturbation_weight(int t, const PerturbationParams& params, RngStream& rng);

/// x_cp = clamp(best + xi * chaos) with a fresh logistic value per dimension.
/// Draws xi first (one uniform), then advances `map` dim times. Returns the
/// candidate unevaluated; greedy acceptance is the engine's job.
Candidate chaotic_perturb(const Candidate& best, int t, const PerturbationParams& params,
                          LogisticMapState& map, const SearchSpace& space, RngStream& rng);

} // namespace mfodbo::chaos
