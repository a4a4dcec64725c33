#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfodbo/types.hpp"

namespace mfodbo::fractional {

/// Truncated Grunwald-Letnikov memory weights for order `delta` over `m`
/// steps. weights[0] = delta and weights[k] = weights[k-1] * (k - delta) /
/// (k + 1), i.e. weights[k-1] = delta*(1-delta)*...*((k-1)-delta) / k!.
/// All weights are >= 0 for delta in (0, 1]; at delta = 1 they collapse to
/// [1, 0, 0, ...] and the memory update reduces to the plain one-step rule.
struct GlCoefficients {
    double delta = 1.0;
    std::vector<double> weights;

    std::size_t memory() const { return weights.size(); }
};

GlCoefficients gl_coefficients(double delta, std::size_t m);

/// Per-individual ring of the last m positions, newest first:
/// at(0) = x(t), at(1) = x(t-1), ... Before warm-up every slot holds the
/// individual's initial position, which makes the first updates behave like
/// a shallow memory without special cases.
class HistoryBuffer {
  public:
    HistoryBuffer(std::size_t m, std::vector<double> initial_position);

    void push(std::span<const double> position);
    std::span<const double> at(std::size_t k) const;

    std::size_t memory() const { return m_; }
    std::size_t dim() const { return dim_; }

  private:
    std::size_t m_;
    std::size_t dim_;
    std::size_t head_ = 0;
    std::vector<double> data_; // m_ * dim_, ring indexed from head_
};

/// Memory-weighted ball-rolling update:
///   x(t+1) = sum_{k=1..m} weights[k-1] * x(t+1-k)
///            + alpha * k_deflection * x(t-1) + b_step * |x(t) - worst|,
/// clamped to the space. Note x(t-1) contributes twice: once inside the
/// memory sum and once through the deflection term; that is deliberate.
/// Purely deterministic; alpha is drawn by the caller.
std::vector<double> fo_roll_update(const HistoryBuffer& history, std::span<const double> x_prev,
                                   std::span<const double> worst, const GlCoefficients& coeffs,
                                   double alpha, double k_deflection, double b_step,
                                   const SearchSpace& space);

} // namespace mfodbo::fractional
