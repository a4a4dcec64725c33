#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mfodbo {

/// Axis-aligned box the search runs in. Every candidate position lives
/// inside [lower[j], upper[j]] for all j.
struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    SearchSpace(std::vector<double> lo, std::vector<double> up);

    /// Same [lo, hi] interval replicated over `dim` dimensions.
    static SearchSpace cube(std::size_t dim, double lo, double hi);

    std::size_t dim() const { return lower.size(); }
    double range(std::size_t j) const { return upper[j] - lower[j]; }
};

/// Hard per-dimension clamp. Idempotent; the only boundary repair used here.
std::vector<double> clamp_to_bounds(std::vector<double> position, const SearchSpace& space);
void clamp_in_place(std::span<double> position, const SearchSpace& space);

/// A position plus its cached fitness. `fitness` is NaN until evaluated;
/// members whose objective returned a non-finite value carry +inf fitness
/// and `penalized = true`.
struct Candidate {
    std::vector<double> position;
    double fitness = std::numeric_limits<double>::quiet_NaN();
    bool penalized = false;

    bool evaluated() const { return !std::isnan(fitness); }
};

/// Population state tracked by the engines. `best_so_far` is the global best
/// over the whole run (monotone), `local_best` / `worst_current` are the
/// best / worst members of the current iteration.
struct Population {
    std::vector<Candidate> members;
    Candidate best_so_far;
    Candidate worst_current;
    Candidate local_best;

    std::size_t size() const { return members.size(); }
};

/// Minimization objective. `evaluate` must be pure and deterministic for a
/// fixed position.
struct ObjectiveSpec {
    std::string name;
    SearchSpace space;
    std::function<double(std::span<const double>)> evaluate;
};

/// Evaluates every member, refreshes best/worst/local-best. Non-finite
/// objective values are mapped to +inf fitness (and flagged) so a run can
/// survive pathological parameter corners. `best_so_far` only improves.
void evaluate_population(Population& pop, const ObjectiveSpec& objective);

} // namespace mfodbo
