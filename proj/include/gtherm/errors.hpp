#pragma once

#include <stdexcept>
#include <string>

namespace gtherm {

/// Thrown when inputs violate a documented precondition (bad support,
/// out-of-range outcome, malformed config, ...). Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation fails numerically (posterior underflow,
/// fit non-convergence, violated internal identity). Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gaussian width too small to correspond to any temperature (sigma^2 <= 1/2).
class HistogramInversionError : public NumericalError {
public:
    explicit HistogramInversionError(double sigma)
        : NumericalError("fitted sigma^2 = " + std::to_string(sigma * sigma) +
                         " <= 1/2: no temperature reproduces this width"),
          sigma_(sigma) {}

    double sigma() const noexcept { return sigma_; }

private:
    double sigma_;
};

} // namespace gtherm
