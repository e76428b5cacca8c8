#include "gtherm/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gtherm/errors.hpp"

namespace gtherm {

namespace {

void check_temperature(double y) {
    if (!std::isfinite(y) || y <= 0.0) {
        throw ValidationError("temperature must be positive and finite, got " +
                              std::to_string(y));
    }
}

void check_gap(double gap) {
    if (!std::isfinite(gap) || gap <= 0.0) {
        throw ValidationError("energy gap must be positive and finite");
    }
}

// Compensated running sum.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double term = x - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Spin gas
// ---------------------------------------------------------------------------

SpinGasModel::SpinGasModel(long long spin_count, double energy_gap)
    : n_(spin_count), gap_(energy_gap) {
    if (spin_count < 0) {
        throw ValidationError("spin count must be >= 0");
    }
    check_gap(energy_gap);
}

void SpinGasModel::validate_outcome(double outcome) const {
    if (!std::isfinite(outcome) || outcome != std::floor(outcome) || outcome < 0.0 ||
        outcome > static_cast<double>(n_)) {
        throw ValidationError("spin-gas outcome must be an integer in [0, " +
                              std::to_string(n_) + "], got " + std::to_string(outcome));
    }
}

double SpinGasModel::log_binomial(long long r) const {
    return std::lgamma(static_cast<double>(n_) + 1.0) -
           std::lgamma(static_cast<double>(r) + 1.0) -
           std::lgamma(static_cast<double>(n_ - r) + 1.0);
}

double SpinGasModel::log_likelihood(double outcome, double y) const {
    validate_outcome(outcome);
    check_temperature(y);
    const auto r = static_cast<long long>(outcome);
    const double a = gap_ / y;
    return log_binomial(r) - static_cast<double>(r) * a -
           static_cast<double>(n_) * std::log1p(std::exp(-a));
}

double SpinGasModel::fisher_information(double y) const {
    check_temperature(y);
    const double c = std::cosh(gap_ / (2.0 * y));
    return static_cast<double>(n_) * gap_ * gap_ / (4.0 * y * y * y * y * c * c);
}

std::vector<double> SpinGasModel::outcome_cdf(double y) const {
    check_temperature(y);
    const double a = gap_ / y;
    const double log_z = static_cast<double>(n_) * std::log1p(std::exp(-a));
    std::vector<double> cdf(static_cast<std::size_t>(n_) + 1);
    KahanSum cum;
    for (long long r = 0; r <= n_; ++r) {
        cum.add(std::exp(log_binomial(r) - static_cast<double>(r) * a - log_z));
        cdf[static_cast<std::size_t>(r)] = cum.sum;
    }
    // Pin the total to exactly one; atoms keep their relative spacing.
    const double total = cdf.back();
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw NumericalError("spin-gas CDF lost normalization");
    }
    for (double& f : cdf) {
        f /= total;
    }
    cdf.back() = 1.0;
    return cdf;
}

std::function<double(double)> SpinGasModel::record_log_likelihood(
    std::span<const double> record) const {
    KahanSum sum_lc;
    double sum_r = 0.0; // integer-valued, exact in double up to 2^53
    for (double outcome : record) {
        validate_outcome(outcome);
        sum_r += outcome;
        sum_lc.add(log_binomial(static_cast<long long>(outcome)));
    }
    const double mu_n = static_cast<double>(record.size()) * static_cast<double>(n_);
    const double lc = sum_lc.sum;
    const double sr = sum_r;
    const double g = gap_;
    return [lc, sr, mu_n, g](double y) {
        check_temperature(y);
        const double a = g / y;
        return lc - sr * a - mu_n * std::log1p(std::exp(-a));
    };
}

// ---------------------------------------------------------------------------
// Oscillator
// ---------------------------------------------------------------------------

OscillatorModel::OscillatorModel(double energy_gap) : gap_(energy_gap) {
    check_gap(energy_gap);
}

void OscillatorModel::validate_outcome(double outcome) const {
    if (!std::isfinite(outcome)) {
        throw ValidationError("oscillator outcome must be finite");
    }
}

double OscillatorModel::position_variance(double y) const {
    check_temperature(y);
    return 0.5 / std::tanh(gap_ / (2.0 * y));
}

double OscillatorModel::log_likelihood(double outcome, double y) const {
    validate_outcome(outcome);
    const double v = position_variance(y);
    return -outcome * outcome / (2.0 * v) - 0.5 * std::log(2.0 * std::numbers::pi * v);
}

double OscillatorModel::fisher_information(double /*y*/) const {
    throw NumericalError(
        "oscillator model ships no closed-form Fisher information and no numerical rule");
}

std::function<double(double)> OscillatorModel::record_log_likelihood(
    std::span<const double> record) const {
    KahanSum sum_x2;
    for (double outcome : record) {
        validate_outcome(outcome);
        sum_x2.add(outcome * outcome);
    }
    const double sx2 = sum_x2.sum;
    const double mu = static_cast<double>(record.size());
    const double g = gap_;
    return [sx2, mu, g](double y) {
        check_temperature(y);
        const double v = 0.5 / std::tanh(g / (2.0 * y));
        return -sx2 / (2.0 * v) - mu * 0.5 * std::log(2.0 * std::numbers::pi * v);
    };
}

std::unique_ptr<ThermalModel> make_model(std::string_view identifier, long long spin_count) {
    if (identifier == "spin-gas") {
        return std::make_unique<SpinGasModel>(spin_count);
    }
    if (identifier == "oscillator") {
        return std::make_unique<OscillatorModel>();
    }
    throw ValidationError("unknown model '" + std::string(identifier) +
                          "' (expected \"spin-gas\" or \"oscillator\")");
}

} // namespace gtherm
