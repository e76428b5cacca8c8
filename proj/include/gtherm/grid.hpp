#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gtherm {

/// Default quadrature resolution. Chosen so every tolerance in the test
/// suite passes with at least a 10x margin; see docs in README.
inline constexpr std::size_t kDefaultNodeCount = 2001;

/// Bounded window of dimensionless temperatures y = k_B T / (hbar w).
/// The scale-invariant prior p(theta) ~ 1/theta is uniform in u = log y
/// on this window, with normalization 1/log(y_max/y_min).
class Support {
public:
    Support(double y_min, double y_max);

    double y_min() const noexcept { return y_min_; }
    double y_max() const noexcept { return y_max_; }

    /// log(y_max / y_min), the length of the window in u = log y.
    double log_width() const noexcept { return log_width_; }

    /// Normalization constant of the uniform-in-u prior density.
    double prior_normalization() const noexcept { return 1.0 / log_width_; }

    /// Window with both edges multiplied by gamma (scale transformation).
    Support scaled(double gamma) const;

private:
    double y_min_;
    double y_max_;
    double log_width_;
};

/// Uniform grid in u = log y over a Support, with quadrature weights for
/// integrals of the form  int f(u) du.
///
/// Nodes are uniformly spaced with u[0] = log y_min and u[N-1] = log y_max.
/// Weights are composite Simpson (3/8 rule closes the last panel when the
/// interval count is odd; plain trapezoid for N = 2), so smooth integrands
/// converge as O(h^4) and quadratics are integrated exactly.
///
/// Grids are immutable after construction and safe to share across threads.
class LogGrid {
public:
    LogGrid(const Support& support, std::size_t node_count);

    const Support& support() const noexcept { return support_; }
    std::size_t size() const noexcept { return u_.size(); }
    double step() const noexcept { return step_; }

    std::span<const double> u_nodes() const noexcept { return u_; }
    std::span<const double> weights() const noexcept { return w_; }

    double u(std::size_t i) const noexcept { return u_[i]; }
    /// Temperature at node i, exp(u_i).
    double y(std::size_t i) const noexcept { return y_[i]; }
    std::span<const double> y_nodes() const noexcept { return y_; }

    /// Quadrature estimate of int f(u) du for f sampled at the nodes.
    /// Uses compensated summation; rejects size mismatch and non-finite
    /// entries.
    double integrate(std::span<const double> values) const;

private:
    Support support_;
    double step_;
    std::vector<double> u_;
    std::vector<double> y_;
    std::vector<double> w_;
};

/// Convenience wrapper matching the operation vocabulary used throughout.
inline LogGrid build_grid(const Support& support, std::size_t node_count) {
    return LogGrid(support, node_count);
}

} // namespace gtherm
