#include "rdpp/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "rdpp/errors.hpp"
#include "rdpp/model.hpp"

namespace rdpp {

namespace {

double pw(double base, double exponent) { return exponent == 0.0 ? 1.0 : std::pow(base, exponent); }

double relative_change(double now, double before) {
    return std::abs(now - before) / std::max(std::abs(before), 1e-12);
}

std::vector<double> log_axis(double lo, double hi, int per_decade) {
    const double decades = std::log10(hi / lo);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * per_decade)) + 1);
    std::vector<double> axis(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        axis[static_cast<std::size_t>(i)] = lo * std::pow(10.0, decades * i / (n - 1));
    axis.back() = hi;
    return axis;
}

struct Sample {
    double value = -std::numeric_limits<double>::infinity();
    double x = 0.0, y = 0.0, t = 0.0;
};

Sample sup_on(const std::vector<CoefficientValues>& values, const std::vector<double>& times,
              const SurrogateIntegrand& f, double lo, double hi, int per_decade) {
    const auto axis = log_axis(lo, hi, per_decade);
    Sample best;
    for (std::size_t k = 0; k < values.size(); ++k)
        for (double x : axis)
            for (double y : axis) {
                const double v = f(x, y, values[k]);
                if (v > best.value) best = {v, x, y, times[k]};
            }
    return best;
}

}  // namespace

double generator_power_sum(double x, double y, const CoefficientValues& v, double w1, double p1,
                           double w2, double p2) {
    const double hx = v.sigma1 + v.sigma2 * x;
    const double hy = v.rho1 + v.rho2 * y;
    const double xp = pw(x, p1), yp = pw(y, p2);
    return 0.5 * p1 * (p1 - 1.0) * w1 * hx * hx * xp + 0.5 * p2 * (p2 - 1.0) * w2 * hy * hy * yp +
           p1 * w1 * xp * (v.a1 - v.b1 * x - ratio_term(v.c1 * y, x, y, v.e)) +
           p2 * w2 * yp * (-v.a2 + ratio_term(v.c2 * x, x, y, v.e) - v.b2 * y);
}

double log_power_sum_drift(double x, double y, const CoefficientValues& v, double w1, double p1,
                           double w2, double p2) {
    const double hx = v.sigma1 + v.sigma2 * x;
    const double hy = v.rho1 + v.rho2 * y;
    const double w = w1 * pw(x, p1) + w2 * pw(y, p2);
    const double g = w1 * p1 * hx * pw(x, p1) + w2 * p2 * hy * pw(y, p2);
    return generator_power_sum(x, y, v, w1, p1, w2, p2) / w - 0.5 * g * g / (w * w);
}

SurrogateResult grid_supremum(const CoefficientSet& c, const SurrogateIntegrand& f,
                              const SurrogateGrid& grid) {
    std::vector<const CoefficientFn*> fns;
    for (std::size_t i = 0; i < CoefficientSet::names.size(); ++i) fns.push_back(&c[i]);
    const auto times = time_grid(fns, grid.time_points_per_period);
    std::vector<CoefficientValues> values;
    values.reserve(times.size());
    for (double t : times) values.push_back(c.at(t));

    double x_max = grid.x_max_start;
    Sample current = sup_on(values, times, f, grid.x_lo, x_max, grid.points_per_decade);
    double extent_change = 0.0;
    for (;;) {
        if (2.0 * x_max > grid.x_max_limit) {
            std::ostringstream os;
            os << "supremum still changing by " << extent_change * 100.0 << "% at grid extent " << x_max;
            throw Error(ErrorCode::UnboundedSurrogate, os.str());
        }
        const Sample wider = sup_on(values, times, f, grid.x_lo, 2.0 * x_max, grid.points_per_decade);
        extent_change = relative_change(wider.value, current.value);
        x_max *= 2.0;
        current = wider;
        if (extent_change < grid.tolerance) break;
    }
    const Sample denser = sup_on(values, times, f, grid.x_lo, x_max, 2 * grid.points_per_decade);

    SurrogateResult r{};
    const Sample& best = denser.value >= current.value ? denser : current;
    r.value = best.value;
    r.arg_x = best.x;
    r.arg_y = best.y;
    r.arg_t = best.t;
    r.x_max = x_max;
    r.extent_change = extent_change;
    r.density_change = relative_change(denser.value, current.value);
    r.time_samples = times.size();
    return r;
}

}  // namespace rdpp
