#include "mfodbo/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfodbo {

SearchSpace::SearchSpace(std::vector<double> lo, std::vector<double> up)
    : lower(std::move(lo)), upper(std::move(up)) {
    if (lower.empty() || lower.size() != upper.size())
        throw std::invalid_argument("SearchSpace: bounds must be non-empty and equal length");
    for (std::size_t j = 0; j < lower.size(); ++j)
        if (!(lower[j] < upper[j]))
            throw std::invalid_argument("SearchSpace: lower[j] < upper[j] violated at dimension " +
                                        std::to_string(j));
}

SearchSpace SearchSpace::cube(std::size_t dim, double lo, double hi) {
    return SearchSpace(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

void clamp_in_place(std::span<double> position, const SearchSpace& space) {
    if (position.size() != space.dim())
        throw std::invalid_argument("clamp_to_bounds: dimension mismatch");
    for (std::size_t j = 0; j < position.size(); ++j)
        position[j] = std::min(space.upper[j], std::max(space.lower[j], position[j]));
}

std::vector<double> clamp_to_bounds(std::vector<double> position, const SearchSpace& space) {
    clamp_in_place(position, space);
    return position;
}

void evaluate_population(Population& pop, const ObjectiveSpec& objective) {
    if (pop.members.empty())
        throw std::invalid_argument("evaluate_population: empty population");
    for (auto& member : pop.members) {
        double f = objective.evaluate(member.position);
        if (!std::isfinite(f)) {
            member.fitness = std::numeric_limits<double>::infinity();
            member.penalized = true;
        } else {
            member.fitness = f;
            member.penalized = false;
        }
    }
    auto by_fitness = [](const Candidate& a, const Candidate& b) { return a.fitness < b.fitness; };
    const auto [lo, hi] =
        std::minmax_element(pop.members.begin(), pop.members.end(), by_fitness);
    pop.local_best = *lo;
    pop.worst_current = *hi;
    if (!pop.best_so_far.evaluated() || lo->fitness < pop.best_so_far.fitness)
        pop.best_so_far = *lo;
}

} // namespace mfodbo
