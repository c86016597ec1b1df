#pragma once

#include <array>
#include <cstdint>

namespace rdpp {

/// Philox4x32-10 counter-based generator.
/// A pure function of (counter, key): no state, no ordering dependence.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept;

/// Standard normal quantile, Wichura's AS 241 (PPND16); relative accuracy
/// about 1e-16 on (0, 1).
double normal_quantile(double p) noexcept;

/// Uniform in the open interval (0, 1) built from the top 52 random bits.
inline double to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Shared scalar Brownian driver for one path.
///
/// The increment for step k is sqrt(dt) * Phi^{-1}(U), where U is keyed by
/// (master_seed, path_index, k, component 0). Both log-coordinate equations
/// of a path consume the same increment.
class BrownianDriver {
public:
    BrownianDriver(std::uint64_t master_seed, std::uint64_t path_index, double dt);

    /// Standard normal variate for step `step`.
    double standard_normal(std::uint64_t step) const noexcept;

    /// Brownian increment over [step*dt, (step+1)*dt).
    double increment(std::uint64_t step) const noexcept { return sqrt_dt_ * standard_normal(step); }

    std::uint64_t master_seed() const noexcept { return seed_; }
    std::uint64_t path_index() const noexcept { return path_; }
    double dt() const noexcept { return dt_; }

private:
    std::uint64_t seed_;
    std::uint64_t path_;
    double dt_;
    double sqrt_dt_;
    PhiloxKey key_;
};

}  // namespace rdpp
