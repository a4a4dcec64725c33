#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mfodbo/types.hpp"

namespace mfodbo::benchfns {

/// A classic unconstrained test function with its standard box and a known
/// optimum (0 for every built-in; the Schwefel offset is folded in).
struct BenchmarkFunction {
    std::string name;
    SearchSpace space;
    double known_optimum = 0.0;
    std::vector<double> argmin;
    std::function<double(std::span<const double>)> evaluate;
};

/// Sphere and Rosenbrock (unimodal/valley), Rastrigin, Ackley, Griewank and
/// Schwefel (multimodal), each at the requested dimension.
std::vector<BenchmarkFunction> builtin_suite(std::size_t dim);

/// Lookup by case-sensitive name; throws if absent.
BenchmarkFunction builtin(const std::string& name, std::size_t dim);

ObjectiveSpec to_objective(const BenchmarkFunction& fn);

/// Objective backed by a subprocess: the position is written
/// whitespace-separated to the command's stdin and one real is read back.
/// One process invocation per evaluation; failures surface the offending
/// position in the error message.
class ExternalCommand {
  public:
    ExternalCommand(std::string command, SearchSpace space);

    double operator()(std::span<const double> position) const;
    std::uint64_t evaluations() const;

  private:
    struct State;
    std::shared_ptr<State> state_;
};

ObjectiveSpec external_objective(const std::string& command, SearchSpace space,
                                 std::string name = "external");

} // namespace mfodbo::benchfns
