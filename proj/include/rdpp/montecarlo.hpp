#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rdpp/integrate.hpp"
#include "rdpp/parallel.hpp"

namespace rdpp {

/// Pathwise functional evaluated at every save time. Absent species enter
/// with density 0 (so x^0 = 1 and x^p = 0 for p > 0).
struct Functional {
    enum class Kind { WeightedPowerSum, Moment, Prey, Predator, LogPrey, LogPredator };

    Kind kind = Kind::Moment;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double weight1 = 1.0;
    double weight2 = 1.0;

    /// x^theta1 * y^theta2
    static Functional moment(double theta1, double theta2) { return {Kind::Moment, theta1, theta2, 1.0, 1.0}; }
    /// weight1 * x^theta1 + weight2 * y^theta2
    static Functional weighted_power_sum(double w1, double theta1, double w2, double theta2) {
        return {Kind::WeightedPowerSum, theta1, theta2, w1, w2};
    }
    static Functional prey() { return {Kind::Prey, 1.0, 0.0, 1.0, 0.0}; }
    static Functional predator() { return {Kind::Predator, 0.0, 1.0, 0.0, 1.0}; }
    static Functional log_prey() { return {Kind::LogPrey, 1.0, 0.0, 1.0, 0.0}; }
    static Functional log_predator() { return {Kind::LogPredator, 0.0, 1.0, 0.0, 1.0}; }

    double operator()(double x, double y) const;
    std::string name() const;
    bool operator==(const Functional&) const = default;
};

struct RunOptions {
    std::uint64_t master_seed = 0;
    unsigned threads = 0;  // 0 = hardware concurrency
    bool keep_per_path = false;
    /// Skip validate_coefficients; only for degenerate oracle configurations.
    bool allow_degenerate = false;
};

/// Mean/variance of one functional per save time over surviving paths.
struct SeriesStats {
    std::vector<double> mean;
    std::vector<double> variance;  // unbiased sample variance; 0 when count < 2
    std::vector<std::int64_t> count;
};

struct EnsembleSummary {
    std::int64_t n_paths = 0;
    std::int64_t n_blowups = 0;
    std::vector<double> times;
    std::vector<Functional> functionals;
    std::vector<SeriesStats> stats;  // parallel to functionals
    /// per_path[f][p][i] when RunOptions::keep_per_path; blown-up paths hold NaN.
    std::vector<std::vector<std::vector<double>>> per_path;
    double wall_seconds = 0.0;

    /// Index into functionals; throws Error(UnknownFunctional).
    std::size_t functional_index(const Functional& f) const;
    /// Index into times; throws Error(OffGrid).
    std::size_t time_index(double t) const;
};

struct MomentEstimate {
    double time;
    double point_estimate;
    double standard_error;
    double ci_low;
    double ci_high;
    std::int64_t n_effective;
};

struct Window {
    double t_lo;
    double t_hi;
};

/// [t_end/2, t_end].
inline Window tail_window(double t_end) { return {0.5 * t_end, t_end}; }

struct SlopeEstimate {
    double slope;
    double intercept;
    Window fit_window;
    double r_squared;
};

enum class Species { Prey, Predator };

inline constexpr double kZ95 = 1.959963984540054;

/// One path's functional values: values[f][i] at save index i.
struct PathFunctionals {
    bool blew_up = false;
    std::vector<std::vector<double>> values;
};

/// Welford aggregation in the given (index) order over non-blown-up paths.
EnsembleSummary aggregate(std::vector<double> times, std::vector<Functional> functionals,
                          std::span<const PathFunctionals> paths);

/// Throws Error(InvalidConfig) for an unusable run.
void check_run_inputs(const SimConfig& cfg, const CoefficientSet& c, std::int64_t n_paths,
                      const RunOptions& options);

/// Simulates paths 0..n_paths-1 under options.master_seed and evaluates
/// `fn(const PathRecord&)` on each in parallel; results are index-ordered.
/// Validates cfg (and the coefficients unless allow_degenerate).
template <class Fn>
auto map_paths(const SimConfig& cfg, const CoefficientSet& c, std::int64_t n_paths,
               const RunOptions& options, Fn&& fn) {
    using Result = decltype(fn(std::declval<const PathRecord&>()));
    check_run_inputs(cfg, c, n_paths, options);
    std::vector<Result> out(static_cast<std::size_t>(n_paths));
    parallel_for(n_paths, options.threads, [&](std::int64_t p) {
        const BrownianDriver driver(options.master_seed, static_cast<std::uint64_t>(p), cfg.dt);
        out[static_cast<std::size_t>(p)] = fn(simulate_path(cfg, c, driver));
    });
    return out;
}

EnsembleSummary run_ensemble(const SimConfig& cfg, const CoefficientSet& c, std::int64_t n_paths,
                             std::vector<Functional> functionals, const RunOptions& options = {});

/// Estimate with 95% normal CI for functional index `f` at save index `i`.
MomentEstimate estimate_at(const EnsembleSummary& s, std::size_t f, std::size_t i);

/// Sample mean of x_t^theta1 y_t^theta2; requires Functional::moment(theta1, theta2).
MomentEstimate estimate_moment(const EnsembleSummary& s, double theta1, double theta2, double t);

/// (1/T) * trapezoid integral of varsigma1 x^varrho1 + varsigma2 y^varrho2 over the save grid.
double time_average_moment(const PathRecord& path, double varrho1, double varrho2, double varsigma1,
                           double varsigma2);

/// Least-squares slope of ln(density) against t over the window.
SlopeEstimate log_slope(const PathRecord& path, Species species, Window window);

/// max over the window (restricted to t >= e) of (theta1 ln x_t + theta2 ln y_t) / ln t.
double loggrowth_stat(const PathRecord& path, double theta1, double theta2, Window window);

/// Linear-interpolation (type 7) sample quantile.
double quantile(std::vector<double> values, double q);

struct QuantileEstimate {
    double value;
    double ci_low;   // distribution-free 95% bounds from binomial order statistics
    double ci_high;
};
QuantileEstimate quantile_with_ci(std::vector<double> values, double q);

struct MeanEstimate {
    double mean;
    double standard_error;
    double ci_low;
    double ci_high;
    std::int64_t n;
};
MeanEstimate mean_with_ci(std::span<const double> values);

}  // namespace rdpp
