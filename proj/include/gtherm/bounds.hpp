#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gtherm/grid.hpp"
#include "gtherm/models.hpp"

namespace gtherm {

/// Outcome enumeration cap for eps_opt; spin counts above this refuse to run.
inline constexpr long long kSpinEnumerationCap = 200'000;

/// Prior-averaged precision quantities for one probe size.
struct BoundPoint {
    long long n;      ///< spin count
    double eps_opt;   ///< global optimum of the mean logarithmic error
    double eps_cr;    ///< local Cramer-Rao-like bound, int p(y)/(y^2 F) dy
    double eps_p;     ///< prior-only risk
    double info_gain; ///< K, with eps_opt = eps_p - K
    double eps_flat;  ///< non-invariant comparator int p(y)/F dy
};

struct OptimalRisk {
    double eps_opt;
    double eps_p;
    double info_gain;
    double theta_p;
};

/// Global optimum for the spin gas by exact enumeration of the n+1 outcomes:
///   eps_opt = int p(y) log^2 y du  -  sum_r p(r) log^2 theta(r),
/// with p(r) the prior-predictive outcome probability and theta(r) the
/// optimal estimate for the single-outcome record [r]. Also returns eps_p
/// and K; the identity eps_opt = eps_p - K is asserted to 1e-8 relative
/// (NumericalError otherwise). Outcomes whose predictive peak falls below
/// 1e-300 are skipped after checking their total mass is < 1e-12.
OptimalRisk eps_opt(const SpinGasModel& model, const Support& support,
                    std::size_t node_count = kDefaultNodeCount);

/// int p(y) / (y^2 F(y)) du over the support. Returns +infinity when the
/// Fisher information vanishes identically (the degenerate n = 0 gas).
double eps_cr(const ThermalModel& model, const Support& support,
              std::size_t node_count = kDefaultNodeCount);

/// The non-invariant comparator int p(y) / F(y) du (no 1/y^2 weight); it
/// picks up a factor gamma^2 under scale transformations.
double eps_flat(const ThermalModel& model, const Support& support,
                std::size_t node_count = kDefaultNodeCount);

/// All bound quantities for one spin count.
BoundPoint bound_point(const SpinGasModel& model, const Support& support,
                       std::size_t node_count = kDefaultNodeCount);

/// Least-squares fit of log(eps_cr - eps_opt) = q log n + log b.
struct AsymptoticFit {
    double q;
    double log_b;
    double stderr_q;
    double stderr_log_b;
    std::vector<double> n_values;
    std::vector<double> residuals;

    double b() const;
};

/// Ordinary least squares over the supplied points. Requires >= 5 points
/// (ValidationError) with eps_cr > eps_opt > 0 everywhere; a non-positive
/// difference means quadrature noise dominates and the fit is refused
/// (NumericalError).
AsymptoticFit fit_asymptotic(std::span<const BoundPoint> points);

/// Minimum spin count for which the local asymptote c1/n approximates the
/// optimum c1/n - c2 n^q within relative tolerance tau:
///   n(tau) = [(c2/c1)(1 + 1/tau)]^(1/(-1-q)).
double tolerance_spins(double tau, double c1, double c2, double q);

} // namespace gtherm
