#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace gtherm {

enum class OutcomeKind {
    discrete,  ///< integer outcomes 0..r_max
    continuous ///< real outcomes
};

/// A thermal likelihood model p(outcome | y) in dimensionless temperature
/// y = k_B theta / (hbar w). Every model depends on temperature only through
/// the ratio energy / (k_B theta); the energy_gap parameter expresses the
/// probe's energy scale in units of the reference hbar w, so that
/// p(outcome | y; gap) == p(outcome | gamma y; gamma gap) identically.
///
/// Models are immutable value objects; all member functions are pure and
/// safe for unrestricted concurrent use.
class ThermalModel {
public:
    virtual ~ThermalModel() = default;

    virtual OutcomeKind outcome_kind() const noexcept = 0;
    virtual std::string_view identifier() const noexcept = 0;
    virtual double energy_gap() const noexcept = 0;

    /// Throws ValidationError if the outcome is not in the model's space.
    virtual void validate_outcome(double outcome) const = 0;

    /// log p(outcome | y). Validates both arguments.
    virtual double log_likelihood(double outcome, double y) const = 0;

    /// Fisher information per unit of dimensionless temperature y.
    /// Throws NumericalError when the model has no closed form.
    virtual double fisher_information(double y) const = 0;

    /// Validates a full record once and returns an evaluator for
    /// sum_i log p(record_i | y) as a function of y. The sum is carried via
    /// the model's sufficient statistics, so the result is independent of
    /// record order.
    virtual std::function<double(double)> record_log_likelihood(
        std::span<const double> record) const = 0;
};

/// Gas of n non-interacting spin-1/2 particles with energy gap hbar w.
/// Total-energy outcomes r = 0..n follow the binomially weighted Boltzmann
/// distribution p(r|y) = C(n,r) exp(-r g / y) / (1 + exp(-g / y))^n.
///
/// n = 0 is accepted as the degenerate, zero-information gas (the single
/// outcome r = 0); it is used by bound sweeps as the no-measurement row.
class SpinGasModel final : public ThermalModel {
public:
    explicit SpinGasModel(long long spin_count, double energy_gap = 1.0);

    long long spin_count() const noexcept { return n_; }
    double energy_gap() const noexcept override { return gap_; }

    OutcomeKind outcome_kind() const noexcept override { return OutcomeKind::discrete; }
    std::string_view identifier() const noexcept override { return "spin-gas"; }

    void validate_outcome(double outcome) const override;
    double log_likelihood(double outcome, double y) const override;

    /// Closed form n g^2 / [4 y^4 cosh^2(g/(2y))].
    double fisher_information(double y) const override;

    std::function<double(double)> record_log_likelihood(
        std::span<const double> record) const override;

    /// Cumulative outcome probabilities f(r), r = 0..n; non-decreasing with
    /// f(n) = 1.
    std::vector<double> outcome_cdf(double y) const;

    /// log C(n, r) via log-gamma; never exponentiated standalone.
    double log_binomial(long long r) const;

private:
    long long n_;
    double gap_;
};

/// Thermal harmonic oscillator probed by position measurements. The
/// dimensionless coordinate x is Gaussian with variance
/// sigma^2(y) = coth(g/(2y)) / 2, which tends to the ground-state value 1/2
/// as y -> 0 and grows monotonically with y.
class OscillatorModel final : public ThermalModel {
public:
    explicit OscillatorModel(double energy_gap = 1.0);

    double energy_gap() const noexcept override { return gap_; }

    OutcomeKind outcome_kind() const noexcept override { return OutcomeKind::continuous; }
    std::string_view identifier() const noexcept override { return "oscillator"; }

    void validate_outcome(double outcome) const override;
    double log_likelihood(double outcome, double y) const override;

    /// No closed form is shipped (bounds are computed for the spin gas
    /// only); always throws NumericalError.
    double fisher_information(double y) const override;

    std::function<double(double)> record_log_likelihood(
        std::span<const double> record) const override;

    double position_variance(double y) const;

private:
    double gap_;
};

/// Factory used by the CLI: identifier "spin-gas" (requires spin_count) or
/// "oscillator". Throws ValidationError for anything else.
std::unique_ptr<ThermalModel> make_model(std::string_view identifier, long long spin_count);

} // namespace gtherm
