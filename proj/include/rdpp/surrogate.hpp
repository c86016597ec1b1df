#pragma once

#include <cstddef>
#include <functional>

#include "rdpp/coefficients.hpp"

namespace rdpp {

/// Generator of the model applied to V1 = w1 x^p1 + w2 y^p2 at (x, y) with
/// coefficient values v (full H2 diffusion (sigma1 + sigma2 x) x, ...).
double generator_power_sum(double x, double y, const CoefficientValues& v, double w1, double p1,
                           double w2, double p2);

/// Ito drift of ln(w1 x^p1 + w2 y^p2) at (x, y): the integrand P whose
/// supremum, plus the power sum itself, bounds long-run time averages.
double log_power_sum_drift(double x, double y, const CoefficientValues& v, double w1, double p1,
                           double w2, double p2);

struct SurrogateGrid {
    double x_lo = 1e-4;
    double x_max_start = 10.0;
    double x_max_limit = 1e12;
    int points_per_decade = 40;
    std::size_t time_points_per_period = 64;
    double tolerance = 0.01;  // relative change accepted as "stable"
};

struct SurrogateResult {
    double value;            // supremum on the final (extent, 2x density) grid
    double x_max;            // final grid extent
    double extent_change;    // relative change from the last extent doubling
    double density_change;   // relative change from doubling points per decade
    double arg_x, arg_y, arg_t;
    std::size_t time_samples;
};

using SurrogateIntegrand = std::function<double(double x, double y, const CoefficientValues& v)>;

/// Supremum of `f` over [x_lo, X]^2 x (one coefficient period), growing X
/// by doubling until the supremum changes by less than `tolerance`.
/// Throws Error(UnboundedSurrogate) if X exceeds x_max_limit first.
SurrogateResult grid_supremum(const CoefficientSet& c, const SurrogateIntegrand& f,
                              const SurrogateGrid& grid = {});

}  // namespace rdpp
