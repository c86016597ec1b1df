#include "rdpp/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rdpp/errors.hpp"

namespace rdpp {

CoefficientFn CoefficientFn::constant(double value) {
    CoefficientFn f;
    f.kind_ = Kind::Constant;
    f.value_ = value;
    f.inf_ = value;
    f.sup_ = value;
    return f;
}

CoefficientFn CoefficientFn::piecewise(std::vector<double> breakpoints, std::vector<double> values) {
    CoefficientFn f;
    f.kind_ = Kind::PiecewiseConstant;
    f.breakpoints_ = std::move(breakpoints);
    f.values_ = std::move(values);
    if (!f.values_.empty()) {
        auto [lo, hi] = std::minmax_element(f.values_.begin(), f.values_.end());
        f.inf_ = *lo;
        f.sup_ = *hi;
        f.value_ = f.values_.front();
    }
    return f;
}

CoefficientFn CoefficientFn::sinusoidal(double mean, double amplitude, double period, double phase) {
    CoefficientFn f;
    f.kind_ = Kind::Sinusoidal;
    f.value_ = mean;
    f.amplitude_ = amplitude;
    f.period_ = period;
    f.phase_ = phase;
    f.inf_ = mean - std::abs(amplitude);
    f.sup_ = mean + std::abs(amplitude);
    if (amplitude == 0.0) f.kind_ = Kind::Constant;
    return f;
}

double CoefficientFn::piecewise_at(double t) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double CoefficientFn::sinusoid_at(double t) const {
    return value_ + amplitude_ * std::sin(2.0 * std::numbers::pi * t / period_ + phase_);
}

std::vector<double> CoefficientFn::critical_times(double horizon) const {
    std::vector<double> out;
    if (kind_ == Kind::PiecewiseConstant) {
        for (double b : breakpoints_)
            if (b <= horizon) out.push_back(b);
    } else if (kind_ == Kind::Sinusoidal) {
        // sin(2*pi*t/P + phase) = +-1  <=>  t = P * (k/2 + 1/4 - phase/(2*pi))
        const double shift = 0.25 - phase_ / (2.0 * std::numbers::pi);
        const double kmin = std::ceil(2.0 * (0.0 - shift * period_) / period_);
        for (double k = kmin;; k += 1.0) {
            const double t = period_ * (0.5 * k + shift);
            if (t > horizon) break;
            if (t >= 0.0) out.push_back(t);
        }
    }
    return out;
}

std::string CoefficientFn::structural_problem() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Constant:
            if (!std::isfinite(value_)) os << "value is not finite";
            break;
        case Kind::PiecewiseConstant:
            if (values_.empty()) {
                os << "piecewise function has no values";
            } else if (values_.size() != breakpoints_.size() + 1) {
                os << "piecewise function needs one more value than breakpoints (got "
                   << values_.size() << " values, " << breakpoints_.size() << " breakpoints)";
            } else if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
                os << "piecewise value is not finite";
            } else {
                for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
                    if (!(breakpoints_[i] > (i == 0 ? 0.0 : breakpoints_[i - 1])) ||
                        !std::isfinite(breakpoints_[i])) {
                        os << "breakpoints must be finite, positive and strictly increasing";
                        break;
                    }
                }
            }
            break;
        case Kind::Sinusoidal:
            if (!std::isfinite(value_) || !std::isfinite(amplitude_) || !std::isfinite(phase_))
                os << "sinusoid parameters must be finite";
            else if (!(period_ > 0.0) || !std::isfinite(period_))
                os << "sinusoid period must be positive";
            break;
    }
    return os.str();
}

bool CoefficientSet::all_constant() const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (!(*this)[i].is_constant()) return false;
    return true;
}

const CoefficientFn& CoefficientSet::operator[](std::size_t i) const {
    return const_cast<CoefficientSet&>(*this)[i];
}

CoefficientFn& CoefficientSet::operator[](std::size_t i) {
    switch (i) {
        case 0: return a1;
        case 1: return a2;
        case 2: return b1;
        case 3: return b2;
        case 4: return c1;
        case 5: return c2;
        case 6: return e;
        case 7: return sigma1;
        case 8: return sigma2;
        case 9: return rho1;
        case 10: return rho2;
        default: throw Error(ErrorCode::PreconditionViolated, "coefficient index out of range");
    }
}

CoefficientSet CoefficientSet::constants(double a1, double a2, double b1, double b2, double c1,
                                         double c2, double e, double sigma1, double sigma2,
                                         double rho1, double rho2) {
    using F = CoefficientFn;
    return {F::constant(a1), F::constant(a2), F::constant(b1), F::constant(b2),
            F::constant(c1), F::constant(c2), F::constant(e), F::constant(sigma1),
            F::constant(sigma2), F::constant(rho1), F::constant(rho2)};
}

std::vector<double> time_grid(std::span<const CoefficientFn* const> fns,
                              std::size_t points_per_period, double* spacing) {
    constexpr std::size_t kMaxUniformPoints = 4'000'000;
    double min_period = 0.0, max_period = 0.0, last_break = 0.0;
    for (const CoefficientFn* f : fns) {
        if (f->kind() == CoefficientFn::Kind::Sinusoidal) {
            min_period = min_period == 0.0 ? f->period() : std::min(min_period, f->period());
            max_period = std::max(max_period, f->period());
        } else if (f->kind() == CoefficientFn::Kind::PiecewiseConstant && !f->breakpoints().empty()) {
            last_break = std::max(last_break, f->breakpoints().back());
        }
    }
    if (spacing) *spacing = 0.0;
    std::vector<double> grid{0.0};
    const double horizon = last_break + max_period;
    if (max_period > 0.0 && points_per_period > 0) {
        double h = min_period / static_cast<double>(points_per_period);
        auto n = static_cast<std::size_t>(std::ceil(horizon / h));
        if (n > kMaxUniformPoints) {
            n = kMaxUniformPoints;
            h = horizon / static_cast<double>(n);
        }
        if (spacing) *spacing = h;
        grid.reserve(n + 1);
        for (std::size_t i = 1; i <= n; ++i) grid.push_back(h * static_cast<double>(i));
    }
    for (const CoefficientFn* f : fns) {
        auto extra = f->critical_times(horizon);
        grid.insert(grid.end(), extra.begin(), extra.end());
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

}  // namespace rdpp
