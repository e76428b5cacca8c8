#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gtherm/models.hpp"

namespace gtherm {

/// Deterministic counter-based uniform generator (SplitMix64: the output of
/// a bit-mixing function applied to seed + i * golden-ratio increment, with
/// the published constants of Steele, Lea & Flood). Identical seeds produce
/// identical sequences on every platform; the state is a single uint64.
///
/// Gaussian variates use the Marsaglia polar method on the same stream.
/// One stream per logical experiment; streams are not shared across tasks.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) noexcept
        : seed_(seed), state_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1).
    double next_uniform() noexcept;

    /// Standard normal variate.
    double next_gaussian() noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// A simulated measurement record: mu outcomes drawn at the true temperature.
struct Trace {
    std::string model_id;   ///< "spin-gas" or "oscillator"
    long long spin_count;   ///< 0 for the oscillator
    double energy_gap;
    double true_y;
    std::uint64_t seed;
    std::vector<double> outcomes; ///< integers r or reals x
};

/// Smallest index r with cdf[r] >= u. Binary search over the precomputed
/// array when it is long, linear scan with early exit otherwise.
std::size_t invert_cdf(std::span<const double> cdf, double u);

/// Inverse-CDF sampling of spin-gas energy outcomes.
Trace sample_spin_gas(const SpinGasModel& model, double true_y, std::size_t mu,
                      RngStream& rng);

/// Gaussian position outcomes with variance sigma^2(true_y).
Trace sample_oscillator(const OscillatorModel& model, double true_y, std::size_t mu,
                        RngStream& rng);

} // namespace gtherm
