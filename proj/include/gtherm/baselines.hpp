#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gtherm/models.hpp"
#include "gtherm/simulate.hpp"

namespace gtherm {

/// First-order local (CRB-based) estimate seeded at theta0.
struct LocalEstimate {
    double theta0;
    double theta_L; ///< theta0 + score / (mu F(theta0))
    double delta_L; ///< 1 / sqrt(mu F(theta0))
};

/// Closed-form local estimator for the spin gas:
///   theta_L = theta0 { 1 + (theta0/g) [ (4 rbar / n) cosh^2(g/(2 theta0))
///                                        - exp(-g/theta0) - 1 ] },
///   delta_L = (2 theta0^2 / (g sqrt(mu n))) cosh(g/(2 theta0)).
LocalEstimate local_estimate(const SpinGasModel& model, std::span<const double> record,
                             double theta0);

struct Histogram {
    std::vector<double> bin_edges;      ///< size bins + 1
    std::vector<std::size_t> counts;    ///< sums to the sample size
    std::vector<double> centers;
    std::vector<double> densities;      ///< counts / (mu * width)
};

/// Equal-width histogram over [min(x), max(x)]. bin_count = 0 selects the
/// square-root rule, ceil(sqrt(mu)).
Histogram make_histogram(std::span<const double> data, std::size_t bin_count = 0);

/// Two-parameter Gauss-Newton fit of y ~ A exp(-x^2 / (2 sigma^2)) with
/// analytic Jacobian; standard errors from the linearized covariance.
struct GaussianProfileFit {
    double amplitude;
    double sigma;
    double amplitude_stderr;
    double sigma_stderr;
    int iterations;
};

GaussianProfileFit fit_gaussian_profile(std::span<const double> xs,
                                        std::span<const double> ys,
                                        double amplitude_init, double sigma_init);

/// Invert sigma^2(theta) = coth(g/(2 theta))/2 for the temperature:
/// theta = g / (2 arcoth(2 sigma^2)). Throws HistogramInversionError when
/// sigma^2 <= 1/2 (no temperature produces a width below ground state).
double sigma_to_theta(double sigma, double energy_gap = 1.0);
double sigma_to_theta_derivative(double sigma, double energy_gap = 1.0);

struct HistogramFit {
    Histogram histogram;
    double amplitude;
    double sigma;
    double amplitude_stderr;
    double sigma_stderr;
    double theta_F; ///< temperature from the fitted width
    double delta_F; ///< |dtheta/dsigma| * sigma_stderr
};

/// Full histogram-fitting baseline for an oscillator trace: histogram,
/// Gaussian profile fit initialized at sample moments, sigma -> theta
/// inversion, and first-order error propagation. Requires mu >= 10 and
/// bin_count >= 5 (0 selects the square-root rule).
HistogramFit histogram_fit_estimate(const Trace& trace, std::size_t bin_count = 0);

} // namespace gtherm
