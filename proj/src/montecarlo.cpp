#include "rdpp/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rdpp/errors.hpp"

namespace rdpp {

namespace {

constexpr std::int64_t kBlockPaths = 512;

struct Welford {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    void add(double v) {
        ++n;
        const double d = v - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (v - mean);
    }
};

struct Accumulator {
    std::vector<std::vector<Welford>> cells;  // [functional][time]
    std::int64_t n_paths = 0;
    std::int64_t n_blowups = 0;

    Accumulator(std::size_t n_functionals, std::size_t n_times)
        : cells(n_functionals, std::vector<Welford>(n_times)) {}

    void add(const PathFunctionals& p) {
        ++n_paths;
        if (p.blew_up) {
            ++n_blowups;
            return;
        }
        for (std::size_t f = 0; f < cells.size(); ++f)
            for (std::size_t i = 0; i < cells[f].size(); ++i) cells[f][i].add(p.values[f][i]);
    }

    void finish(EnsembleSummary& s) const {
        s.n_paths = n_paths;
        s.n_blowups = n_blowups;
        s.stats.clear();
        for (const auto& row : cells) {
            SeriesStats st;
            for (const Welford& w : row) {
                st.mean.push_back(w.n > 0 ? w.mean : std::numeric_limits<double>::quiet_NaN());
                st.variance.push_back(w.n > 1 ? w.m2 / static_cast<double>(w.n - 1) : 0.0);
                st.count.push_back(w.n);
            }
            s.stats.push_back(std::move(st));
        }
    }
};

PathFunctionals evaluate(const PathRecord& path, const std::vector<Functional>& functionals,
                         std::size_t n_times) {
    PathFunctionals out;
    out.blew_up = path.blew_up;
    if (path.blew_up) return out;
    out.values.assign(functionals.size(), std::vector<double>(n_times));
    for (std::size_t f = 0; f < functionals.size(); ++f)
        for (std::size_t i = 0; i < n_times; ++i)
            out.values[f][i] = functionals[f](path.prey_at(i), path.predator_at(i));
    return out;
}

double powi(double base, double exponent) {
    return exponent == 0.0 ? 1.0 : std::pow(base, exponent);
}

}  // namespace

double Functional::operator()(double x, double y) const {
    switch (kind) {
        case Kind::Moment: return powi(x, theta1) * powi(y, theta2);
        case Kind::WeightedPowerSum: return weight1 * powi(x, theta1) + weight2 * powi(y, theta2);
        case Kind::Prey: return x;
        case Kind::Predator: return y;
        case Kind::LogPrey: return std::log(x);
        case Kind::LogPredator: return std::log(y);
    }
    return 0.0;
}

std::string Functional::name() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Moment: os << "moment(" << theta1 << "," << theta2 << ")"; break;
        case Kind::WeightedPowerSum:
            os << "power_sum(" << weight1 << "," << theta1 << "," << weight2 << "," << theta2 << ")";
            break;
        case Kind::Prey: os << "prey"; break;
        case Kind::Predator: os << "predator"; break;
        case Kind::LogPrey: os << "log_prey"; break;
        case Kind::LogPredator: os << "log_predator"; break;
    }
    return os.str();
}

std::size_t EnsembleSummary::functional_index(const Functional& f) const {
    auto it = std::find(functionals.begin(), functionals.end(), f);
    if (it == functionals.end()) throw Error(ErrorCode::UnknownFunctional, f.name() + " was not registered");
    return static_cast<std::size_t>(it - functionals.begin());
}

std::size_t EnsembleSummary::time_index(double t) const {
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
    std::ostringstream os;
    os << "t=" << t << " is not on the save grid";
    throw Error(ErrorCode::OffGrid, os.str());
}

EnsembleSummary aggregate(std::vector<double> times, std::vector<Functional> functionals,
                          std::span<const PathFunctionals> paths) {
    Accumulator acc(functionals.size(), times.size());
    for (const auto& p : paths) acc.add(p);
    EnsembleSummary s;
    s.times = std::move(times);
    s.functionals = std::move(functionals);
    acc.finish(s);
    return s;
}

void check_run_inputs(const SimConfig& cfg, const CoefficientSet& c, std::int64_t n_paths,
                      const RunOptions& options) {
    cfg.validate();
    if (n_paths < 1) throw Error(ErrorCode::InvalidConfig, "n_paths must be >= 1");
    if (!options.allow_degenerate) {
        auto report = validate_coefficients(c);
        if (!report.ok()) throw Error(ErrorCode::InvalidConfig, report.summary());
    }
}

EnsembleSummary run_ensemble(const SimConfig& cfg, const CoefficientSet& c, std::int64_t n_paths,
                             std::vector<Functional> functionals, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    check_run_inputs(cfg, c, n_paths, options);

    const auto n_times = static_cast<std::size_t>(cfg.n_saves());
    EnsembleSummary s;
    s.times.reserve(n_times);
    for (std::size_t i = 0; i < n_times; ++i)
        s.times.push_back(static_cast<double>(i) * static_cast<double>(cfg.save_every) * cfg.dt);
    s.functionals = functionals;
    if (options.keep_per_path)
        s.per_path.assign(functionals.size(), std::vector<std::vector<double>>(static_cast<std::size_t>(n_paths)));

    Accumulator acc(functionals.size(), n_times);
    std::vector<PathFunctionals> block;
    for (std::int64_t first = 0; first < n_paths; first += kBlockPaths) {
        const std::int64_t count = std::min(kBlockPaths, n_paths - first);
        block.assign(static_cast<std::size_t>(count), {});
        parallel_for(count, options.threads, [&](std::int64_t j) {
            const BrownianDriver driver(options.master_seed, static_cast<std::uint64_t>(first + j), cfg.dt);
            const PathRecord path = simulate_path(cfg, c, driver);
            auto& slot = block[static_cast<std::size_t>(j)];
            slot = evaluate(path, functionals, n_times);
            // A blow-up truncates the save grid, so its partial values are never used.
        });
        for (std::int64_t j = 0; j < count; ++j) {
            const auto& p = block[static_cast<std::size_t>(j)];
            acc.add(p);
            if (options.keep_per_path) {
                for (std::size_t f = 0; f < functionals.size(); ++f)
                    s.per_path[f][static_cast<std::size_t>(first + j)] =
                        p.blew_up ? std::vector<double>(n_times, std::numeric_limits<double>::quiet_NaN())
                                  : p.values[f];
            }
        }
    }
    acc.finish(s);
    s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

MomentEstimate estimate_at(const EnsembleSummary& s, std::size_t f, std::size_t i) {
    const SeriesStats& st = s.stats.at(f);
    MomentEstimate m{};
    m.time = s.times.at(i);
    m.point_estimate = st.mean.at(i);
    m.n_effective = st.count.at(i);
    m.standard_error = m.n_effective > 0 ? std::sqrt(st.variance[i] / static_cast<double>(m.n_effective)) : 0.0;
    m.ci_low = m.point_estimate - kZ95 * m.standard_error;
    m.ci_high = m.point_estimate + kZ95 * m.standard_error;
    return m;
}

MomentEstimate estimate_moment(const EnsembleSummary& s, double theta1, double theta2, double t) {
    const std::size_t f = s.functional_index(Functional::moment(theta1, theta2));
    return estimate_at(s, f, s.time_index(t));
}

double time_average_moment(const PathRecord& path, double varrho1, double varrho2, double varsigma1,
                           double varsigma2) {
    if (path.blew_up) throw Error(ErrorCode::BlownUpPath, "time average of a blown-up path");
    if (path.times.size() < 2) throw Error(ErrorCode::EmptyWindow, "need at least two save points");
    const Functional g = Functional::weighted_power_sum(varsigma1, varrho1, varsigma2, varrho2);
    double integral = 0.0;
    double prev = g(path.prey_at(0), path.predator_at(0));
    for (std::size_t i = 1; i < path.times.size(); ++i) {
        const double cur = g(path.prey_at(i), path.predator_at(i));
        integral += 0.5 * (prev + cur) * (path.times[i] - path.times[i - 1]);
        prev = cur;
    }
    return integral / (path.times.back() - path.times.front());
}

SlopeEstimate log_slope(const PathRecord& path, Species species, Window window) {
    if (path.blew_up) throw Error(ErrorCode::BlownUpPath, "log slope of a blown-up path");
    const bool prey = species == Species::Prey;
    if (prey ? !path.has_prey() : !path.has_predator())
        throw Error(ErrorCode::PreconditionViolated, "species is absent in this path");
    const auto& values = prey ? path.xs : path.ys;

    double n = 0.0, st = 0.0, sl = 0.0;
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        const double t = path.times[i];
        if (t < window.t_lo || t > window.t_hi) continue;
        n += 1.0;
        st += t;
        sl += std::log(values[i]);
    }
    if (n < 2.0 || !(window.t_lo < window.t_hi))
        throw Error(ErrorCode::EmptyWindow, "fewer than two save points in the fit window");
    const double mt = st / n, ml = sl / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        const double t = path.times[i];
        if (t < window.t_lo || t > window.t_hi) continue;
        const double dx = t - mt, dy = std::log(values[i]) - ml;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    SlopeEstimate est{};
    est.slope = sxy / sxx;
    est.intercept = ml - est.slope * mt;
    est.fit_window = window;
    est.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return est;
}

double loggrowth_stat(const PathRecord& path, double theta1, double theta2, Window window) {
    if (path.blew_up) throw Error(ErrorCode::BlownUpPath, "log-growth statistic of a blown-up path");
    if ((theta1 != 0.0 && !path.has_prey()) || (theta2 != 0.0 && !path.has_predator()))
        throw Error(ErrorCode::PreconditionViolated, "nonzero exponent on an absent species");
    const double lo = std::max(window.t_lo, std::numbers::e);
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        const double t = path.times[i];
        if (t < lo || t > window.t_hi) continue;
        double num = 0.0;
        if (theta1 != 0.0) num += theta1 * std::log(path.xs[i]);
        if (theta2 != 0.0) num += theta2 * std::log(path.ys[i]);
        best = std::max(best, num / std::log(t));
        any = true;
    }
    if (!any) throw Error(ErrorCode::EmptyWindow, "no save points with t >= e in the window");
    return best;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw Error(ErrorCode::EmptyWindow, "quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * std::clamp(q, 0.0, 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

QuantileEstimate quantile_with_ci(std::vector<double> values, double q) {
    if (values.empty()) throw Error(ErrorCode::EmptyWindow, "quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    const double half = kZ95 * std::sqrt(n * q * (1.0 - q));
    auto order_stat = [&](double rank) {  // 1-based rank, clamped
        const double r = std::clamp(rank, 1.0, n);
        return values[static_cast<std::size_t>(r) - 1];
    };
    QuantileEstimate e{};
    e.value = quantile(values, q);
    e.ci_low = std::min(e.value, order_stat(std::floor(n * q - half)));
    e.ci_high = std::max(e.value, order_stat(std::ceil(n * q + half) + 1.0));
    return e;
}

MeanEstimate mean_with_ci(std::span<const double> values) {
    Welford w;
    for (double v : values) w.add(v);
    MeanEstimate e{};
    e.n = w.n;
    e.mean = w.n > 0 ? w.mean : std::numeric_limits<double>::quiet_NaN();
    e.standard_error = w.n > 1 ? std::sqrt(w.m2 / static_cast<double>(w.n - 1) / static_cast<double>(w.n)) : 0.0;
    e.ci_low = e.mean - kZ95 * e.standard_error;
    e.ci_high = e.mean + kZ95 * e.standard_error;
    return e;
}

}  // namespace rdpp
