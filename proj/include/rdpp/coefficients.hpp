#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rdpp {

/// Time-varying model coefficient restricted to kinds with exact bounds.
///
/// Piecewise-constant functions are right-continuous: `values[i]` holds on
/// `[breakpoints[i-1], breakpoints[i])`, with `breakpoints[-1] = 0` and the
/// last value extending to infinity. Sinusoids are
/// `mean + amplitude * sin(2*pi*t/period + phase)`.
class CoefficientFn {
public:
    enum class Kind { Constant, PiecewiseConstant, Sinusoidal };

    CoefficientFn() = default;

    static CoefficientFn constant(double value);
    static CoefficientFn piecewise(std::vector<double> breakpoints, std::vector<double> values);
    static CoefficientFn sinusoidal(double mean, double amplitude, double period, double phase = 0.0);

    double operator()(double t) const {
        switch (kind_) {
            case Kind::Constant: return value_;
            case Kind::PiecewiseConstant: return piecewise_at(t);
            case Kind::Sinusoidal: return sinusoid_at(t);
        }
        return value_;
    }

    Kind kind() const noexcept { return kind_; }
    bool is_constant() const noexcept { return kind_ == Kind::Constant; }

    /// Exact infimum and supremum over t in [0, inf).
    double declared_inf() const noexcept { return inf_; }
    double declared_sup() const noexcept { return sup_; }

    /// True iff the function is zero for every t >= 0.
    bool identically_zero() const noexcept { return inf_ == 0.0 && sup_ == 0.0; }

    double value() const noexcept { return value_; }
    double mean() const noexcept { return value_; }
    double amplitude() const noexcept { return amplitude_; }
    double period() const noexcept { return period_; }
    double phase() const noexcept { return phase_; }
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Times within [0, horizon] where the function attains an extremum or jumps.
    std::vector<double> critical_times(double horizon) const;

    /// Empty when the parameters are well formed, otherwise a description.
    std::string structural_problem() const;

private:
    double piecewise_at(double t) const;
    double sinusoid_at(double t) const;

    Kind kind_ = Kind::Constant;
    double value_ = 0.0;  // constant value, or sinusoid mean
    double amplitude_ = 0.0;
    double period_ = 1.0;
    double phase_ = 0.0;
    std::vector<double> breakpoints_;
    std::vector<double> values_;
    double inf_ = 0.0;
    double sup_ = 0.0;
};

/// Values of all coefficients at one instant.
struct CoefficientValues {
    double a1, a2, b1, b2, c1, c2, e;
    double sigma1, sigma2, rho1, rho2;
};

struct CoefficientSet {
    CoefficientFn a1, a2, b1, b2, c1, c2, e;
    CoefficientFn sigma1, sigma2, rho1, rho2;

    static constexpr std::array<std::string_view, 11> names{
        "a1", "a2", "b1", "b2", "c1", "c2", "e", "sigma1", "sigma2", "rho1", "rho2"};

    CoefficientValues at(double t) const {
        return {a1(t), a2(t), b1(t), b2(t), c1(t), c2(t), e(t),
                sigma1(t), sigma2(t), rho1(t), rho2(t)};
    }

    bool all_constant() const;

    /// Coefficient by position in `names`.
    const CoefficientFn& operator[](std::size_t i) const;
    CoefficientFn& operator[](std::size_t i);

    /// Constant coefficient set; convenient for tests and configs.
    static CoefficientSet constants(double a1, double a2, double b1, double b2, double c1,
                                    double c2, double e, double sigma1, double sigma2,
                                    double rho1, double rho2);
};

/// Sample times covering the time variation of `fns`: a uniform grid of
/// `points_per_period` points over the longest period (or the last
/// breakpoint, whichever is later, plus one period) together with every
/// breakpoint and every sinusoid extremum in that span. `{0}` when all
/// functions are constant. `spacing` receives the uniform grid spacing
/// (0 for the constant case).
std::vector<double> time_grid(std::span<const CoefficientFn* const> fns,
                              std::size_t points_per_period, double* spacing = nullptr);

}  // namespace rdpp
