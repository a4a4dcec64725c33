#include "mfodbo/fractional.hpp"

#include <stdexcept>

namespace mfodbo::fractional {

GlCoefficients gl_coefficients(double delta, std::size_t m) {
    if (!(delta > 0.0) || !(delta <= 1.0))
        throw std::invalid_argument("gl_coefficients: delta must be in (0, 1]");
    if (m == 0)
        throw std::invalid_argument("gl_coefficients: memory depth must be >= 1");
    GlCoefficients out;
    out.delta = delta;
    out.weights.resize(m);
    out.weights[0] = delta;
    for (std::size_t k = 1; k < m; ++k)
        out.weights[k] =
            out.weights[k - 1] * (static_cast<double>(k) - delta) / (static_cast<double>(k) + 1.0);
    return out;
}

HistoryBuffer::HistoryBuffer(std::size_t m, std::vector<double> initial_position)
    : m_(m), dim_(initial_position.size()) {
    if (m_ == 0 || dim_ == 0)
        throw std::invalid_argument("HistoryBuffer: memory and dimension must be >= 1");
    data_.resize(m_ * dim_);
    for (std::size_t k = 0; k < m_; ++k)
        std::copy(initial_position.begin(), initial_position.end(), data_.begin() + k * dim_);
}

void HistoryBuffer::push(std::span<const double> position) {
    if (position.size() != dim_)
        throw std::invalid_argument("HistoryBuffer: dimension mismatch");
    head_ = (head_ + m_ - 1) % m_;
    std::copy(position.begin(), position.end(), data_.begin() + head_ * dim_);
}

std::span<const double> HistoryBuffer::at(std::size_t k) const {
    if (k >= m_)
        throw std::out_of_range("HistoryBuffer: index past memory depth");
    const std::size_t slot = (head_ + k) % m_;
    return {data_.data() + slot * dim_, dim_};
}

std::vector<double> fo_roll_update(const HistoryBuffer& history, std::span<const double> x_prev,
                                   std::span<const double> worst, const GlCoefficients& coeffs,
                                   double alpha, double k_deflection, double b_step,
                                   const SearchSpace& space) {
    const std::size_t dim = history.dim();
    if (x_prev.size() != dim || worst.size() != dim || space.dim() != dim)
        throw std::invalid_argument("fo_roll_update: dimension mismatch");
    const std::span<const double> current = history.at(0);

    std::vector<double> out(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        double acc = coeffs.weights[0] * current[j];
        for (std::size_t k = 1; k < coeffs.weights.size(); ++k)
            acc += coeffs.weights[k] * history.at(k)[j];
        // Shared tail shape with the classic rolling kernel so the delta = 1
        // reduction is bit-exact.
        acc += alpha * k_deflection * x_prev[j];
        acc += b_step * std::abs(current[j] - worst[j]);
        out[j] = acc;
    }
    clamp_in_place(out, space);
    return out;
}

} // namespace mfodbo::fractional
