#include "gtherm/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gtherm/errors.hpp"

namespace gtherm {

namespace {

void check_deviation(const DeviationParams& dev) {
    if (!std::isfinite(dev.alpha) || dev.alpha <= 0.0 || !std::isfinite(dev.k) || dev.k <= 0.0) {
        throw ValidationError("deviation parameters alpha and k must be positive");
    }
}

} // namespace

Posterior::Posterior(LogGrid grid, std::span<const double> raw_log_density)
    : grid_(std::move(grid)) {
    const std::size_t n = grid_.size();
    if (raw_log_density.size() != n) {
        throw ValidationError("log density length does not match grid");
    }
    double peak = -std::numeric_limits<double>::infinity();
    for (double v : raw_log_density) {
        if (std::isnan(v)) {
            throw NumericalError("posterior log density contains NaN");
        }
        peak = std::max(peak, v);
    }
    if (!std::isfinite(peak)) {
        throw NumericalError(
            "posterior density underflowed to zero everywhere; the support is "
            "inconsistent with the record");
    }
    density_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        density_[i] = std::exp(raw_log_density[i] - peak);
    }
    const double z = grid_.integrate(density_);
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw NumericalError("posterior normalization failed");
    }
    log_density_.resize(n);
    const double log_z = std::log(z);
    for (std::size_t i = 0; i < n; ++i) {
        density_[i] /= z;
        log_density_[i] = raw_log_density[i] - peak - log_z;
    }
}

Posterior posterior(const ThermalModel& model, const Support& support,
                    std::span<const double> record, std::size_t node_count) {
    if (record.empty()) {
        throw ValidationError("record must be non-empty (use prior_posterior for no data)");
    }
    const auto loglik = model.record_log_likelihood(record);
    LogGrid grid(support, node_count);
    std::vector<double> raw(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        raw[i] = loglik(grid.y(i));
    }
    return Posterior(std::move(grid), raw);
}

Posterior prior_posterior(const Support& support, std::size_t node_count) {
    LogGrid grid(support, node_count);
    const std::vector<double> raw(grid.size(), 0.0);
    return Posterior(std::move(grid), raw);
}

double optimal_estimate(const Posterior& post, double log_eps0) {
    const auto& grid = post.grid();
    const auto dens = post.density();
    std::vector<double> integrand(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        integrand[i] = (grid.u(i) - log_eps0) * dens[i];
    }
    return std::exp(grid.integrate(integrand) + log_eps0);
}

double conditional_risk(const Posterior& post, double theta_tilde,
                        const DeviationParams& dev, double log_eps0) {
    if (!std::isfinite(theta_tilde) || theta_tilde <= 0.0) {
        throw ValidationError("theta_tilde must be positive and finite");
    }
    check_deviation(dev);
    const auto& grid = post.grid();
    const auto dens = post.density();
    const double lt = std::log(theta_tilde) - log_eps0;
    std::vector<double> integrand(grid.size());
    if (dev.alpha == 1.0 && dev.k == 2.0) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double d = lt - (grid.u(i) - log_eps0);
            integrand[i] = d * d * dens[i];
        }
    } else {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double d = dev.alpha * (lt - (grid.u(i) - log_eps0));
            integrand[i] = std::pow(std::abs(d), dev.k) * dens[i];
        }
    }
    return grid.integrate(integrand);
}

GlobalEstimate global_estimate(const Posterior& post, const DeviationParams& dev) {
    const double theta_hat = optimal_estimate(post);
    const double eps_mle = conditional_risk(post, theta_hat, dev);
    const auto& grid = post.grid();
    const auto dens = post.density();
    const auto w = grid.weights();

    // Mass inside the 3 grid cells adjacent to each edge; > 1/2 means the
    // window is clipping the posterior.
    const std::size_t cells = std::min<std::size_t>(3, grid.size() - 1);
    double edge_mass = 0.0;
    for (std::size_t i = 0; i <= cells; ++i) {
        edge_mass += w[i] * dens[i];
        edge_mass += w[grid.size() - 1 - i] * dens[grid.size() - 1 - i];
    }
    return GlobalEstimate{theta_hat, eps_mle, theta_hat * std::sqrt(eps_mle),
                          edge_mass > 0.5};
}

GlobalEstimate global_estimate(const ThermalModel& model, const Support& support,
                               std::span<const double> record, std::size_t node_count,
                               const DeviationParams& dev) {
    return global_estimate(posterior(model, support, record, node_count), dev);
}

PriorEstimate prior_estimate(const Support& support) {
    const double width = support.log_width();
    return PriorEstimate{std::sqrt(support.y_min() * support.y_max()), width * width / 12.0};
}

} // namespace gtherm
