#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rdpp/coefficients.hpp"

namespace rdpp {

/// Population densities; both strictly positive along any solution.
struct State {
    double x;  // prey
    double y;  // predator
};

/// Log coordinates (xi = ln x, eta = ln y) used for integration.
struct LogState {
    double xi;
    double eta;
};

/// A (prey, predator) pair of rates or diffusion amplitudes.
struct Components {
    double prey;
    double predator;
};

struct Violation {
    std::string coefficient;
    std::string message;
    double bound;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
    std::string summary() const;
};

enum class Hypothesis { H1, H2, Neither };
std::string_view to_string(Hypothesis h);

/// Closed-form constants of the exponential moment envelope for
/// E[x^theta1 y^theta2] under H1.
struct Theorem2Constants {
    double d1;
    double d2;
    double theta;
    double lambda1;
    double lambda2;
    /// Uniform spacing of the time grid used for the supremum in d1; 0 when exact.
    double d1_grid_spacing;

    /// exp{lambda1 + lambda2 * exp(-d2 t)}.
    double envelope(double t) const;
};

/// Exponents and weights for the moment functionals
/// V1 = varsigma1 x^theta1 + varsigma2 y^theta2 and
/// V2 = varsigma1 x^varrho1 + varsigma2 y^varrho2.
struct MomentSpec {
    double theta1 = 1.0;
    double theta2 = 1.0;
    double varsigma1 = 1.0;
    double varsigma2 = 1.0;
    double varrho1 = 1.0;
    double varrho2 = 1.0;
};

enum class PreySoloCase { ExtinctionExponential, ExtinctionMean, LogGrowth };
std::string_view to_string(PreySoloCase c);

struct PreySoloCriterion {
    double value;
    PreySoloCase regime;
};

/// Tolerance on sup{a1 - sigma1^2/2} for classifying the critical case.
inline constexpr double kCriticalityTolerance = 1e-12;
/// Points per shortest period used for suprema of time-varying expressions.
inline constexpr std::size_t kSupGridPointsPerPeriod = 10'000;

ValidationReport validate_coefficients(const CoefficientSet& c);
Hypothesis classify_hypothesis(const CoefficientSet& c);

/// c*x/(x + e*y) style ratio u/(x + e*y), taken as 0 at the origin.
inline double ratio_term(double numerator, double x, double y, double e) {
    const double denom = x + e * y;
    return denom > 0.0 ? numerator / denom : 0.0;
}

Components drift_xy(const State& s, const CoefficientValues& v);
Components diffusion_xy(const State& s, const CoefficientValues& v);
Components drift_log(const LogState& ls, const CoefficientValues& v);
Components diffusion_log(const LogState& ls, const CoefficientValues& v);

inline Components drift_xy(const State& s, double t, const CoefficientSet& c) { return drift_xy(s, c.at(t)); }
inline Components diffusion_xy(const State& s, double t, const CoefficientSet& c) { return diffusion_xy(s, c.at(t)); }
inline Components drift_log(const LogState& ls, double t, const CoefficientSet& c) { return drift_log(ls, c.at(t)); }
inline Components diffusion_log(const LogState& ls, double t, const CoefficientSet& c) { return diffusion_log(ls, c.at(t)); }

/// Throws Error(NotH1) unless `c` satisfies H1.
void require_h1(const CoefficientSet& c);
/// Throws Error(NotH2) unless `c` satisfies H2.
void require_h2(const CoefficientSet& c);

Theorem2Constants theorem2_constants(const CoefficientSet& c, double theta1, double theta2,
                                     double x0, double y0);

/// -inf_t [a2(t) + rho1(t)^2/2]: almost-sure bound on ln(y_t)/t without prey.
double predator_extinction_rate(const CoefficientSet& c);

/// sup_t [a1(t) - sigma1(t)^2/2] and the regime it selects without predators.
PreySoloCriterion prey_solo_criterion(const CoefficientSet& c);

}  // namespace rdpp
