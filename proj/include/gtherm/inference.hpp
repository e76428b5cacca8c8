#pragma once

#include <span>
#include <vector>

#include "gtherm/grid.hpp"
#include "gtherm/models.hpp"

namespace gtherm {

/// Deviation family |alpha log(theta_tilde / theta)|^k. The defaults
/// (alpha = 1, k = 2) select the mean logarithmic error, which is the only
/// member wired into bounds and CLI defaults.
struct DeviationParams {
    double alpha = 1.0;
    double k = 2.0;
};

/// Normalized posterior density over a LogGrid, conditioned on an outcome
/// record. Densities live in u = log y: int density(u) du = 1.
/// Point masses are represented as narrow densities, never true deltas.
class Posterior {
public:
    /// Normalizes exp(raw_log_density) against the grid via a single
    /// max-subtraction. Throws NumericalError when the density underflows
    /// to zero everywhere (support/record inconsistency).
    Posterior(LogGrid grid, std::span<const double> raw_log_density);

    const LogGrid& grid() const noexcept { return grid_; }
    std::span<const double> density() const noexcept { return density_; }
    std::span<const double> log_density() const noexcept { return log_density_; }

private:
    LogGrid grid_;
    std::vector<double> density_;
    std::vector<double> log_density_;
};

/// Posterior from an outcome record: log density(u) = sum_i log p(r_i | e^u)
/// up to a constant; the scale-invariant prior is uniform in u and drops out.
Posterior posterior(const ThermalModel& model, const Support& support,
                    std::span<const double> record, std::size_t node_count);

/// Empty-record variant: the prior itself, uniform in u.
Posterior prior_posterior(const Support& support, std::size_t node_count);

/// Optimal estimator for the mean logarithmic error: the exponentiated
/// posterior mean of log temperature. log_eps0 shifts the internal log
/// offset (the arbitrary dimension-neutralizing constant); the result is
/// independent of it, which the tests exercise.
double optimal_estimate(const Posterior& post, double log_eps0 = 0.0);

/// Outcome-conditioned risk int density(u) |alpha (log theta_tilde - u)|^k du.
/// With default DeviationParams this is the mean logarithmic error of the
/// record, eps_mle(r).
double conditional_risk(const Posterior& post, double theta_tilde,
                        const DeviationParams& dev = {}, double log_eps0 = 0.0);

struct GlobalEstimate {
    double theta_hat;  ///< optimal estimate, in [y_min, y_max]
    double eps_mle;    ///< conditional risk at theta_hat
    double error_bar;  ///< theta_hat * sqrt(eps_mle)
    /// More than half the posterior mass sits within 3 grid cells of a
    /// support edge: the window is probably clipping the truth.
    bool edge_warning;
};

GlobalEstimate global_estimate(const Posterior& post, const DeviationParams& dev = {});
GlobalEstimate global_estimate(const ThermalModel& model, const Support& support,
                               std::span<const double> record, std::size_t node_count,
                               const DeviationParams& dev = {});

struct PriorEstimate {
    double theta_p; ///< geometric midpoint sqrt(y_min y_max)
    double eps_p;   ///< log^2(y_max/y_min) / 12
};

/// Best estimate and risk before any measurement, for the uniform-in-log
/// prior on the support.
PriorEstimate prior_estimate(const Support& support);

} // namespace gtherm
