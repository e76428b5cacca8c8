#include "gtherm/grid.hpp"

#include <cmath>
#include <string>

#include "gtherm/errors.hpp"

namespace gtherm {

Support::Support(double y_min, double y_max) : y_min_(y_min), y_max_(y_max) {
    if (!std::isfinite(y_min) || !std::isfinite(y_max) || y_min <= 0.0 || y_min >= y_max) {
        throw ValidationError("support requires 0 < y_min < y_max, both finite (got [" +
                              std::to_string(y_min) + ", " + std::to_string(y_max) + "])");
    }
    log_width_ = std::log(y_max / y_min);
}

Support Support::scaled(double gamma) const {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw ValidationError("scale factor must be positive and finite");
    }
    return Support(gamma * y_min_, gamma * y_max_);
}

LogGrid::LogGrid(const Support& support, std::size_t node_count) : support_(support) {
    if (node_count < 2) {
        throw ValidationError("node_count must be >= 2");
    }
    const double u0 = std::log(support.y_min());
    const double u1 = std::log(support.y_max());
    step_ = (u1 - u0) / static_cast<double>(node_count - 1);

    u_.resize(node_count);
    y_.resize(node_count);
    for (std::size_t i = 0; i < node_count; ++i) {
        u_[i] = u0 + static_cast<double>(i) * step_;
    }
    u_.front() = u0;
    u_.back() = u1;
    for (std::size_t i = 0; i < node_count; ++i) {
        y_[i] = std::exp(u_[i]);
    }

    // Composite Simpson weights. An even node count leaves an odd number of
    // panels: close the last three with the 3/8 rule. Two nodes fall back to
    // the trapezoid.
    const double h = step_;
    w_.assign(node_count, 0.0);
    if (node_count == 2) {
        w_[0] = w_[1] = h / 2.0;
        return;
    }
    const std::size_t simpson_end = (node_count % 2 == 1) ? node_count - 1 : node_count - 4;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w_[i] += h / 3.0;
        w_[i + 1] += 4.0 * h / 3.0;
        w_[i + 2] += h / 3.0;
    }
    if (node_count % 2 == 0) {
        const std::size_t j = node_count - 4;
        w_[j] += 3.0 * h / 8.0;
        w_[j + 1] += 9.0 * h / 8.0;
        w_[j + 2] += 9.0 * h / 8.0;
        w_[j + 3] += 3.0 * h / 8.0;
    }
}

double LogGrid::integrate(std::span<const double> values) const {
    if (values.size() != u_.size()) {
        throw ValidationError("integrate: expected " + std::to_string(u_.size()) +
                              " values, got " + std::to_string(values.size()));
    }
    // Kahan summation keeps the result independent of accumulation noise.
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ValidationError("integrate: non-finite value at node " + std::to_string(i));
        }
        const double term = w_[i] * values[i] - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

} // namespace gtherm
