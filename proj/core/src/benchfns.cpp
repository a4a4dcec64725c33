// popen/pclose/getpid are POSIX, not ISO C++.
#define _POSIX_C_SOURCE 200809L

#include "mfodbo/benchfns.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <stdio.h>
#include <unistd.h>

namespace mfodbo::benchfns {

namespace {

// Minimizer of -x*sin(sqrt(x)) on [-500, 500] and the matching offset that
// zeroes the optimum.
constexpr double kSchwefelArgmin = 420.968746359982025;
constexpr double kSchwefelOffset = 418.98288727243374;

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return s;
}

double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
        const double a = x[j + 1] - x[j] * x[j];
        const double b = 1.0 - x[j];
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double rastrigin(std::span<const double> x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x)
        s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return s;
}

double ackley(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * std::numbers::pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
           std::numbers::e;
}

double griewank(std::span<const double> x) {
    double s = 0.0;
    double p = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        s += x[j] * x[j] / 4000.0;
        p *= std::cos(x[j] / std::sqrt(static_cast<double>(j + 1)));
    }
    return s - p + 1.0;
}

double schwefel(std::span<const double> x) {
    double s = kSchwefelOffset * static_cast<double>(x.size());
    for (double v : x)
        s -= v * std::sin(std::sqrt(std::abs(v)));
    return s;
}

} // namespace

std::vector<BenchmarkFunction> builtin_suite(std::size_t dim) {
    if (dim < 2)
        throw std::invalid_argument("builtin_suite: dimension must be >= 2");
    std::vector<BenchmarkFunction> suite;
    suite.push_back({"sphere", SearchSpace::cube(dim, -100.0, 100.0), 0.0,
                     std::vector<double>(dim, 0.0), sphere});
    suite.push_back({"rosenbrock", SearchSpace::cube(dim, -30.0, 30.0), 0.0,
                     std::vector<double>(dim, 1.0), rosenbrock});
    suite.push_back({"rastrigin", SearchSpace::cube(dim, -5.12, 5.12), 0.0,
                     std::vector<double>(dim, 0.0), rastrigin});
    suite.push_back({"ackley", SearchSpace::cube(dim, -32.768, 32.768), 0.0,
                     std::vector<double>(dim, 0.0), ackley});
    suite.push_back({"griewank", SearchSpace::cube(dim, -600.0, 600.0), 0.0,
                     std::vector<double>(dim, 0.0), griewank});
    suite.push_back({"schwefel", SearchSpace::cube(dim, -500.0, 500.0), 0.0,
                     std::vector<double>(dim, kSchwefelArgmin), schwefel});
    return suite;
}

BenchmarkFunction builtin(const std::string& name, std::size_t dim) {
    for (auto& fn : builtin_suite(dim))
        if (fn.name == name)
            return fn;
    throw std::invalid_argument("builtin: unknown benchmark function '" + name + "'");
}

ObjectiveSpec to_objective(const BenchmarkFunction& fn) {
    return {fn.name, fn.space, fn.evaluate};
}

struct ExternalCommand::State {
    std::string command;
    SearchSpace space;
    mutable std::atomic<std::uint64_t> evaluations{0};
    mutable std::atomic<std::uint64_t> next_file{0};

    State(std::string cmd, SearchSpace sp) : command(std::move(cmd)), space(std::move(sp)) {}
};

ExternalCommand::ExternalCommand(std::string command, SearchSpace space)
    : state_(std::make_shared<State>(std::move(command), std::move(space))) {}

double ExternalCommand::operator()(std::span<const double> position) const {
    auto format_position = [&] {
        std::ostringstream oss;
        oss.precision(17);
        for (std::size_t j = 0; j < position.size(); ++j)
            oss << (j ? " " : "") << position[j];
        return oss.str();
    };

    const std::uint64_t stamp = state_->next_file.fetch_add(1);
    const std::filesystem::path input =
        std::filesystem::temp_directory_path() /
        ("mfodbo_eval_" + std::to_string(::getpid()) + "_" + std::to_string(stamp) + ".txt");
    {
        std::FILE* f = std::fopen(input.c_str(), "w");
        if (!f)
            throw std::runtime_error("external objective: cannot write " + input.string());
        const std::string text = format_position() + "\n";
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
    }

    const std::string shell = state_->command + " < " + input.string();
    std::FILE* pipe = ::popen(shell.c_str(), "r");
    if (!pipe) {
        std::filesystem::remove(input);
        throw std::runtime_error("external objective: cannot start '" + state_->command + "'");
    }
    std::string output;
    char buf[256];
    while (std::fgets(buf, sizeof(buf), pipe))
        output += buf;
    const int status = ::pclose(pipe);
    std::filesystem::remove(input);

    state_->evaluations.fetch_add(1);
    if (status != 0)
        throw std::runtime_error("external objective: '" + state_->command +
                                 "' failed (status " + std::to_string(status) +
                                 ") at position [" + format_position() + "]");
    try {
        std::size_t used = 0;
        const double value = std::stod(output, &used);
        (void)used;
        return value;
    } catch (const std::exception&) {
        throw std::runtime_error("external objective: unparseable output '" + output +
                                 "' at position [" + format_position() + "]");
    }
}

std::uint64_t ExternalCommand::evaluations() const { return state_->evaluations.load(); }

ObjectiveSpec external_objective(const std::string& command, SearchSpace space,
                                 std::string name) {
    ExternalCommand evaluator(command, space);
    return {std::move(name), std::move(space), std::move(evaluator)};
}

} // namespace mfodbo::benchfns
