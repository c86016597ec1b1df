#include "rdpp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rdpp/errors.hpp"

namespace rdpp {

namespace {

// Supremum of `expr(c.at(t))` over t >= 0. Exact when every coefficient in
// `used` is constant; otherwise evaluated on time_grid().
template <class Expr>
double sup_over_time(const CoefficientSet& c, std::initializer_list<const CoefficientFn*> used,
                     Expr expr, double* spacing = nullptr) {
    std::vector<const CoefficientFn*> fns(used);
    auto grid = time_grid(fns, kSupGridPointsPerPeriod, spacing);
    double best = -std::numeric_limits<double>::infinity();
    for (double t : grid) best = std::max(best, expr(c.at(t)));
    return best;
}

}  // namespace

std::string ValidationReport::summary() const {
    if (ok()) return "OK";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].message;
    }
    return os.str();
}

std::string_view to_string(Hypothesis h) {
    switch (h) {
        case Hypothesis::H1: return "H1";
        case Hypothesis::H2: return "H2";
        case Hypothesis::Neither: return "NEITHER";
    }
    return "NEITHER";
}

std::string_view to_string(PreySoloCase c) {
    switch (c) {
        case PreySoloCase::ExtinctionExponential: return "EXTINCTION_EXPONENTIAL";
        case PreySoloCase::ExtinctionMean: return "EXTINCTION_MEAN";
        case PreySoloCase::LogGrowth: return "LOGGROWTH";
    }
    return "LOGGROWTH";
}

ValidationReport validate_coefficients(const CoefficientSet& c) {
    ValidationReport report;
    for (std::size_t i = 0; i < CoefficientSet::names.size(); ++i) {
        const std::string name(CoefficientSet::names[i]);
        const CoefficientFn& f = c[i];
        if (auto problem = f.structural_problem(); !problem.empty()) {
            report.violations.push_back({name, name + " " + problem, f.declared_inf()});
            continue;
        }
        const bool noise = i >= 7;
        if (noise) {
            if (f.declared_inf() < 0.0) {
                std::ostringstream os;
                os << name << " infimum < 0 (" << f.declared_inf() << ")";
                report.violations.push_back({name, os.str(), f.declared_inf()});
            }
        } else if (!(f.declared_inf() > 0.0)) {
            std::ostringstream os;
            os << name << " infimum <= 0 (" << f.declared_inf() << ")";
            report.violations.push_back({name, os.str(), f.declared_inf()});
        }
    }
    return report;
}

Hypothesis classify_hypothesis(const CoefficientSet& c) {
    const bool linear_only = c.sigma2.identically_zero() && c.rho2.identically_zero();
    const bool growth_noise = c.sigma1.declared_inf() > 0.0 && c.rho1.declared_inf() > 0.0;
    if (linear_only && growth_noise) return Hypothesis::H1;
    if (growth_noise && c.sigma2.declared_inf() > 0.0 && c.rho2.declared_inf() > 0.0)
        return Hypothesis::H2;
    return Hypothesis::Neither;
}

Components drift_xy(const State& s, const CoefficientValues& v) {
    const double px = v.a1 - v.b1 * s.x - ratio_term(v.c1 * s.y, s.x, s.y, v.e);
    const double py = -v.a2 - v.b2 * s.y + ratio_term(v.c2 * s.x, s.x, s.y, v.e);
    return {px * s.x, py * s.y};
}

Components diffusion_xy(const State& s, const CoefficientValues& v) {
    return {(v.sigma1 + v.sigma2 * s.x) * s.x, (v.rho1 + v.rho2 * s.y) * s.y};
}

Components drift_log(const LogState& ls, const CoefficientValues& v) {
    const double x = std::exp(ls.xi);
    const double y = std::exp(ls.eta);
    const double hx = v.sigma1 + v.sigma2 * x;
    const double hy = v.rho1 + v.rho2 * y;
    return {v.a1 - 0.5 * hx * hx - v.b1 * x - ratio_term(v.c1 * y, x, y, v.e),
            -v.a2 - 0.5 * hy * hy - v.b2 * y + ratio_term(v.c2 * x, x, y, v.e)};
}

Components diffusion_log(const LogState& ls, const CoefficientValues& v) {
    return {v.sigma1 + v.sigma2 * std::exp(ls.xi), v.rho1 + v.rho2 * std::exp(ls.eta)};
}

void require_h1(const CoefficientSet& c) {
    if (auto h = classify_hypothesis(c); h != Hypothesis::H1)
        throw Error(ErrorCode::NotH1, "coefficients classify as " + std::string(to_string(h)));
}

void require_h2(const CoefficientSet& c) {
    if (auto h = classify_hypothesis(c); h != Hypothesis::H2)
        throw Error(ErrorCode::NotH2, "coefficients classify as " + std::string(to_string(h)));
}

double Theorem2Constants::envelope(double t) const {
    return std::exp(lambda1 + lambda2 * std::exp(-d2 * t));
}

Theorem2Constants theorem2_constants(const CoefficientSet& c, double theta1, double theta2,
                                     double x0, double y0) {
    require_h1(c);
    if (!(theta1 > 0.0) || !(theta2 > 0.0))
        throw Error(ErrorCode::PreconditionViolated, "theta1 and theta2 must be positive");
    if (!(x0 > 0.0) || !(y0 > 0.0))
        throw Error(ErrorCode::PreconditionViolated, "initial densities must be positive");

    Theorem2Constants k{};
    k.d2 = std::min(theta1 * c.b1.declared_inf(), theta2 * c.b2.declared_inf());
    k.d1 = sup_over_time(
        c, {&c.sigma1, &c.rho1, &c.a1, &c.a2, &c.c2},
        [&](const CoefficientValues& v) {
            return 0.5 * v.sigma1 * v.sigma1 * theta1 * (theta1 - 1.0) +
                   0.5 * v.rho1 * v.rho1 * theta2 * (theta2 - 1.0) +
                   v.sigma1 * v.rho1 * theta1 * theta2 + theta1 * v.a1 + (v.c2 - v.a2) * theta2;
        },
        &k.d1_grid_spacing);
    const double sum = theta1 + theta2;
    k.theta = 1.0 / sum;
    const double shift = sum * (1.0 - std::log(sum));
    k.lambda1 = k.d1 / k.d2 - shift;
    k.lambda2 = theta1 * std::log(x0) + theta2 * std::log(y0) + shift - k.d1 / k.d2;
    return k;
}

double predator_extinction_rate(const CoefficientSet& c) {
    require_h1(c);
    return sup_over_time(c, {&c.a2, &c.rho1}, [](const CoefficientValues& v) {
        return -(v.a2 + 0.5 * v.rho1 * v.rho1);
    });
}

PreySoloCriterion prey_solo_criterion(const CoefficientSet& c) {
    require_h1(c);
    const double value = sup_over_time(c, {&c.a1, &c.sigma1}, [](const CoefficientValues& v) {
        return v.a1 - 0.5 * v.sigma1 * v.sigma1;
    });
    PreySoloCase regime = PreySoloCase::LogGrowth;
    if (std::abs(value) <= kCriticalityTolerance)
        regime = PreySoloCase::ExtinctionMean;
    else if (value < 0.0)
        regime = PreySoloCase::ExtinctionExponential;
    return {value, regime};
}

}  // namespace rdpp
