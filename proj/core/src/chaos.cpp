#include "mfodbo/chaos.hpp"

#include <cmath>
#include <stdexcept>

namespace mfodbo::chaos {

namespace {

constexpr double kSeedTol = 1e-12;

bool degenerate_logistic_seed(double value, double mu) {
    if (!(value > 0.0) || !(value < 1.0))
        return true;
    // Fixed point of the map itself.
    if (std::abs(value - (1.0 - 1.0 / mu)) < kSeedTol)
        return true;
    // For mu = 4 the orbit of {0.25, 0.5, 0.75} collapses through 1 to 0.
    if (std::abs(mu - 4.0) < kSeedTol) {
        for (double bad : {0.25, 0.5, 0.75})
            if (std::abs(value - bad) < kSeedTol)
                return true;
    }
    return false;
}

} // namespace

LogisticMapState::LogisticMapState(double value, double mu) : value(value), mu(mu) {
    if (!(mu > 0.0) || !(mu <= 4.0))
        throw std::invalid_argument("LogisticMapState: mu must be in (0, 4]");
    if (degenerate_logistic_seed(value, mu))
        throw std::invalid_argument("LogisticMapState: degenerate seed value");
}

LogisticMapState logistic_step(LogisticMapState state) {
    state.value = state.mu * state.value * (1.0 - state.value);
    return state;
}

LogisticMapState logistic_from_rng(double mu, RngStream& rng) {
    for (;;) {
        const double seed = rng.uniform01();
        if (!degenerate_logistic_seed(seed, mu))
            return LogisticMapState(seed, mu);
    }
}

FolcParams::FolcParams(double mu, double v, double seed_value)
    : mu(mu), v(v), seed_value(seed_value) {
    if (!(mu > 0.0) || !(mu <= 4.0))
        throw std::invalid_argument("FolcParams: mu must be in (0, 4]");
    if (!(v > 0.0) || !(v <= 1.0))
        throw std::invalid_argument("FolcParams: v must be in (0, 1]");
    if (!(seed_value > 0.0) || !(seed_value < 1.0))
        throw std::invalid_argument("FolcParams: seed_value must be in (0, 1)");
}

std::vector<double> folc_sequence(const FolcParams& params, std::size_t length) {
    FolcParams validated(params.mu, params.v, params.seed_value); // re-check ranges
    std::vector<double> out;
    if (length == 0)
        return out;
    out.reserve(length);
    out.push_back(validated.seed_value);

    // Kernel weights w_s = G(s + v) / G(s + 1) via the overflow-free
    // recurrence; w_0 = G(v).
    std::vector<double> w(length, 0.0);
    w[0] = std::tgamma(validated.v);
    for (std::size_t s = 1; s < length; ++s)
        w[s] = w[s - 1] * (static_cast<double>(s) - 1.0 + validated.v) / static_cast<double>(s);

    const double coef = validated.mu / std::tgamma(validated.v);
    for (std::size_t t = 1; t < length; ++t) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= t; ++j) {
            const double x = out[j - 1];
            acc += w[t - j] * x * (1.0 - x);
        }
        double value = validated.seed_value + coef * acc;
        value -= std::floor(value);
        if (value == 0.0)
            value = out.back(); // folding landed exactly on the boundary
        out.push_back(value);
    }
    return out;
}

Population folc_initialize(const SearchSpace& space, std::size_t n, const FolcParams& params) {
    if (n == 0)
        throw std::invalid_argument("folc_initialize: population size must be >= 1");
    const std::size_t dim = space.dim();
    const std::vector<double> seq = folc_sequence(params, n * dim);

    Population pop;
    pop.members.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& member = pop.members[i];
        member.position.resize(dim);
        for (std::size_t j = 0; j < dim; ++j)
            member.position[j] = space.lower[j] + seq[i * dim + j] * space.range(j);
    }
    return pop;
}

PerturbationParams::PerturbationParams(double intensity, int t_max, double mu)
    : intensity(intensity), t_max(t_max), mu(mu) {
    if (!(intensity > 0.0) || t_max <= 0 || !(intensity < static_cast<double>(t_max)))
        throw std::invalid_argument("PerturbationParams: require 0 < K < t_max");
    if (!(mu > 0.0) || !(mu <= 4.0))
        throw std::invalid_argument("PerturbationParams: mu must be in (0, 4]");
}

namespace {

double logsig(double z) {
    if (z >= 0.0)
        return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

} // namespace

double perturbation_weight(int t, const PerturbationParams& params, RngStream& rng) {
    const double z = (static_cast<double>(params.t_max) / 2.0 - static_cast<double>(t)) /
                     params.intensity;
    return logsig(z) * rng.uniform01();
}

Candidate chaotic_perturb(const Candidate& best, int t, const PerturbationParams& params,
                          LogisticMapState& map, const SearchSpace& space, RngStream& rng) {
    const double xi = perturbation_weight(t, params, rng);
    Candidate out;
    out.position.resize(best.position.size());
    for (std::size_t j = 0; j < out.position.size(); ++j) {
        map = logistic_step(map);
        out.position[j] = best.position[j] + xi * map.value;
    }
    clamp_in_place(out.position, space);
    return out;
}

} // namespace mfodbo::chaos
