#include "rdpp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "rdpp/errors.hpp"
#include "rdpp/surrogate.hpp"

namespace rdpp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

RunOptions run_options(const HarnessOptions& opts) {
    RunOptions r;
    r.master_seed = opts.master_seed;
    r.threads = opts.threads;
    r.allow_degenerate = opts.allow_degenerate;
    return r;
}

TheoremReport start_report(TheoremId id, const HarnessOptions& opts, std::int64_t n_paths) {
    TheoremReport r;
    r.theorem_id = id;
    r.fingerprint = opts.fingerprint;
    r.n_paths = n_paths;
    return r;
}

void require_mode(const SimConfig& cfg, Mode expected) {
    if (cfg.mode != expected)
        throw Error(ErrorCode::WrongMode, "harness requires mode " + std::string(to_string(expected)) +
                                              ", config has " + std::string(to_string(cfg.mode)));
}

std::vector<double> save_times(const SimConfig& cfg) {
    std::vector<double> t(static_cast<std::size_t>(cfg.n_saves()));
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = static_cast<double>(i) * static_cast<double>(cfg.save_every) * cfg.dt;
    return t;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void note_blowups(TheoremReport& r) {
    if (r.n_blowups > 0) {
        r.notes.push_back(std::to_string(r.n_blowups) +
                          " blown-up paths excluded from the estimates; verdict capped at INCONCLUSIVE");
        r.verdict = combine(r.verdict, Verdict::Inconclusive);
    }
}

// Per-path slope and terminal-extinction data for the absent-species harnesses.
struct ExtinctionSample {
    bool blew_up = false;
    double slope = 0.0;
    bool extinct = false;
};

void assess_extinction(TheoremReport& r, std::span<const ExtinctionSample> samples, double rate,
                       std::string_view species) {
    std::vector<double> slopes;
    std::int64_t extinct = 0;
    for (const auto& s : samples) {
        if (s.blew_up) {
            ++r.n_blowups;
            continue;
        }
        slopes.push_back(s.slope);
        if (s.extinct) ++extinct;
    }
    if (slopes.empty()) throw Error(ErrorCode::BlownUpPath, "every path blew up");

    const QuantileEstimate q95 = quantile_with_ci(slopes, 0.95);
    const double median = quantile(slopes, 0.5);
    const double threshold = rate + kRateSlack;
    r.bounds.push_back({"exponential_rate", rate, "limsup ln(density)/t bound"});
    r.bounds.push_back({"slope_threshold", threshold, "rate + 0.05 slack"});
    r.bounds.push_back({"extinction_fraction_min", kExtinctionFraction, "terminal density < 1e-6 * initial"});
    r.estimates.push_back({"slope_q95", q95.value, q95.ci_low, q95.ci_high});
    r.estimates.push_back({"slope_median", median, median, median});

    const Verdict slope_verdict = classify_upper(q95.ci_low, q95.ci_high, threshold);
    if (slope_verdict != Verdict::Pass)
        r.offenses.push_back({"slope_q95", r.tail_window->t_hi, threshold, q95.value, q95.ci_low, q95.ci_high});
    r.verdict = combine(r.verdict, slope_verdict);

    const double n = static_cast<double>(slopes.size());
    const double frac = static_cast<double>(extinct) / n;
    const double se = std::sqrt(std::max(frac * (1.0 - frac), 0.0) / n);
    r.estimates.push_back({"extinction_fraction", frac, frac - kZ95 * se, frac + kZ95 * se});
    if (frac < kExtinctionFraction) {
        r.offenses.push_back({"extinction_fraction", r.tail_window->t_hi, kExtinctionFraction, frac,
                              frac - kZ95 * se, frac + kZ95 * se});
        r.notes.push_back("only " + fmt(frac * 100.0) + "% of " + std::string(species) +
                          " paths fell below 1e-6 of the initial density by t_end; horizon too short "
                          "to observe extinction (INCONCLUSIVE, not a refutation)");
        r.verdict = combine(r.verdict, Verdict::Inconclusive);
    }
    note_blowups(r);
}

std::vector<ExtinctionSample> extinction_samples(const SimConfig& cfg, const CoefficientSet& c,
                                                 std::int64_t n_paths, const HarnessOptions& opts,
                                                 Species species, Window window) {
    const double initial = species == Species::Prey ? cfg.x0 : cfg.y0;
    return map_paths(cfg, c, n_paths, run_options(opts), [&](const PathRecord& p) {
        ExtinctionSample s;
        s.blew_up = p.blew_up;
        if (p.blew_up) return s;
        s.slope = log_slope(p, species, window).slope;
        const double terminal = species == Species::Prey ? p.xs.back() : p.ys.back();
        s.extinct = terminal < kExtinctionLevel * initial;
        return s;
    });
}

void check_fraction(double v, std::string_view name, bool upper_inclusive) {
    if (!(v > 0.0) || (upper_inclusive ? v > 1.0 : v >= 1.0))
        throw Error(ErrorCode::PreconditionViolated, std::string(name) + " out of range");
}

}  // namespace

std::string_view to_string(TheoremId id) {
    switch (id) {
        case TheoremId::T2_1_Positivity: return "T2_1_POSITIVITY";
        case TheoremId::T3_2_MomentEnvelope: return "T3_2_MOMENT_ENVELOPE";
        case TheoremId::T3_3_MomentBound: return "T3_3_MOMENT_BOUND";
        case TheoremId::T4_1_LogGrowth: return "T4_1_LOGGROWTH";
        case TheoremId::T4_3_PredatorExtinction: return "T4_3_PREDATOR_EXTINCTION";
        case TheoremId::T4_4_PreySolo: return "T4_4_PREY_SOLO";
    }
    return "T2_1_POSITIVITY";
}

std::optional<TheoremId> parse_theorem_id(std::string_view s) {
    for (TheoremId id : {TheoremId::T2_1_Positivity, TheoremId::T3_2_MomentEnvelope, TheoremId::T3_3_MomentBound,
                         TheoremId::T4_1_LogGrowth, TheoremId::T4_3_PredatorExtinction, TheoremId::T4_4_PreySolo})
        if (s == to_string(id)) return id;
    return std::nullopt;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "FAIL";
}

Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
    if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
    return Verdict::Pass;
}

int exit_status(Verdict v) {
    switch (v) {
        case Verdict::Pass: return 0;
        case Verdict::Fail: return 1;
        case Verdict::Inconclusive: return 2;
    }
    return 1;
}

const BoundEntry* TheoremReport::bound(std::string_view name) const {
    for (const auto& b : bounds)
        if (b.name == name) return &b;
    return nullptr;
}

const EstimateEntry* TheoremReport::estimate(std::string_view name) const {
    for (const auto& e : estimates)
        if (e.name == name) return &e;
    return nullptr;
}

Verdict classify_upper(double ci_low, double ci_high, double bound) {
    const double tol = kBoundRelTol * std::max(1.0, std::abs(bound));
    if (ci_high <= bound + tol) return Verdict::Pass;
    if (ci_low > bound + tol) return Verdict::Fail;
    return Verdict::Inconclusive;
}

Verdict classify_with_slack(const QuantileEstimate& q, double bound, double slack) {
    if (q.ci_high < bound) return Verdict::Pass;
    if (q.ci_low > bound + slack) return Verdict::Fail;
    return Verdict::Inconclusive;
}

TheoremReport check_positivity(const SimConfig& cfg, const CoefficientSet& c, std::int64_t n_paths,
                               const HarnessOptions& opts) {
    const auto start = Clock::now();
    TheoremReport r = start_report(TheoremId::T2_1_Positivity, opts, n_paths);

    struct Sample {
        bool blew_up;
        std::int64_t nonpositive;
        double min_density;
    };
    const auto samples = map_paths(cfg, c, n_paths, run_options(opts), [](const PathRecord& p) {
        Sample s{p.blew_up, 0, std::numeric_limits<double>::infinity()};
        for (const auto* v : {&p.xs, &p.ys})
            for (double d : *v) {
                if (!(d > 0.0) || !std::isfinite(d)) ++s.nonpositive;
                s.min_density = std::min(s.min_density, d);
            }
        return s;
    });

    std::int64_t nonpositive = 0;
    double min_density = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        r.n_blowups += s.blew_up ? 1 : 0;
        nonpositive += s.nonpositive;
        min_density = std::min(min_density, s.min_density);
    }
    const double frac = static_cast<double>(r.n_blowups) / static_cast<double>(n_paths);
    r.bounds.push_back({"blowup_fraction_max", kMaxBlowupFraction, "fraction of paths exceeding the log-state guard"});
    r.bounds.push_back({"nonpositive_densities_max", 0.0, "densities recorded <= 0 or non-finite"});
    r.estimates.push_back({"blowup_fraction", frac, frac, frac});
    r.estimates.push_back({"nonpositive_densities", static_cast<double>(nonpositive),
                           static_cast<double>(nonpositive), static_cast<double>(nonpositive)});
    r.estimates.push_back({"min_density", min_density, min_density, min_density});
    if (nonpositive > 0) {
        r.offenses.push_back({"nonpositive_densities", cfg.t_end, 0.0, static_cast<double>(nonpositive),
                              static_cast<double>(nonpositive), static_cast<double>(nonpositive)});
        r.verdict = Verdict::Fail;
    }
    if (!(frac < kMaxBlowupFraction)) {
        r.offenses.push_back({"blowup_fraction", cfg.t_end, kMaxBlowupFraction, frac, frac, frac});
        r.verdict = Verdict::Fail;
    }
    r.runtime_seconds = seconds_since(start);
    return r;
}

TheoremReport check_moment_envelope(const SimConfig& cfg, const CoefficientSet& c, double theta1,
                                    double theta2, std::int64_t n_paths, const HarnessOptions& opts) {
    const auto start = Clock::now();
    require_h1(c);
    require_mode(cfg, Mode::Full);
    TheoremReport r = start_report(TheoremId::T3_2_MomentEnvelope, opts, n_paths);
    const Theorem2Constants k = theorem2_constants(c, theta1, theta2, cfg.x0, cfg.y0);

    r.bounds.push_back({"d1", k.d1, "sup_t[sigma1^2 th1(th1-1)/2 + rho1^2 th2(th2-1)/2 + sigma1 rho1 th1 th2 + th1 a1 + (c2-a2) th2]"});
    r.bounds.push_back({"d2", k.d2, "min(th1 b1_inf, th2 b2_inf)"});
    r.bounds.push_back({"theta", k.theta, "1/(th1+th2)"});
    r.bounds.push_back({"lambda1", k.lambda1, "d1/d2 - (th1+th2)(1 - ln(th1+th2))"});
    r.bounds.push_back({"lambda2", k.lambda2, "th1 ln x0 + th2 ln y0 + (th1+th2)(1 - ln(th1+th2)) - d1/d2"});
    r.bounds.push_back({"asymptotic_bound", std::exp(k.lambda1), "exp(lambda1)"});
    if (k.d1_grid_spacing > 0.0)
        r.notes.push_back("d1 supremum evaluated on a time grid with spacing " + fmt(k.d1_grid_spacing));

    const auto summary = run_ensemble(cfg, c, n_paths, {Functional::moment(theta1, theta2)}, run_options(opts));
    r.n_blowups = summary.n_blowups;
    for (std::size_t i = 0; i < summary.times.size(); ++i) {
        const MomentEstimate m = estimate_at(summary, 0, i);
        const double b = k.envelope(m.time);
        r.envelope.push_back({m.time, b, m.point_estimate, m.ci_low, m.ci_high});
        const Verdict v = classify_upper(m.ci_low, m.ci_high, b);
        if (v != Verdict::Pass) r.offenses.push_back({"envelope", m.time, b, m.point_estimate, m.ci_low, m.ci_high});
        r.verdict = combine(r.verdict, v);
    }
    const MomentEstimate last = estimate_at(summary, 0, summary.times.size() - 1);
    r.estimates.push_back({"terminal_moment", last.point_estimate, last.ci_low, last.ci_high});
    const double asymptote = std::exp(k.lambda1);
    const Verdict tv = classify_upper(last.ci_low, last.ci_high, asymptote);
    if (tv != Verdict::Pass)
        r.offenses.push_back({"asymptotic_bound", last.time, asymptote, last.point_estimate, last.ci_low, last.ci_high});
    r.verdict = combine(r.verdict, tv);
    note_blowups(r);
    r.runtime_seconds = seconds_since(start);
    return r;
}

TheoremReport check_moment_bound(const SimConfig& cfg, const CoefficientSet& c, const MomentSpec& spec,
                                 std::int64_t n_paths, const HarnessOptions& opts) {
    const auto start = Clock::now();
    require_h2(c);
    require_mode(cfg, Mode::Full);
    check_fraction(spec.theta1, "theta1 (must lie in (0,1])", true);
    check_fraction(spec.theta2, "theta2 (must lie in (0,1])", true);
    if (!(spec.varsigma1 > 0.0) || !(spec.varsigma2 > 0.0))
        throw Error(ErrorCode::PreconditionViolated, "varsigma weights must be positive");
    for (double rho : {spec.varrho1, spec.varrho2})
        if (!(rho >= 0.0 && rho < 3.0)) throw Error(ErrorCode::PreconditionViolated, "varrho must lie in [0,3)");

    TheoremReport r = start_report(TheoremId::T3_3_MomentBound, opts, n_paths);
    r.tail_window = tail_window(cfg.t_end);

    const SurrogateResult k1 = grid_supremum(c, [&](double x, double y, const CoefficientValues& v) {
        return generator_power_sum(x, y, v, spec.varsigma1, spec.theta1, spec.varsigma2, spec.theta2) +
               spec.varsigma1 * std::pow(x, spec.theta1) + spec.varsigma2 * std::pow(y, spec.theta2);
    });
    // Exponents of the auxiliary power sum must leave the quadratic-noise term dominant.
    auto aux = [](double theta, double varrho) {
        return (theta < 1.0 && varrho < 2.0 + theta) ? theta : 0.5 * (std::max(0.0, varrho - 2.0) + 1.0);
    };
    const double q1 = aux(spec.theta1, spec.varrho1), q2 = aux(spec.theta2, spec.varrho2);
    const SurrogateResult k2 = grid_supremum(c, [&](double x, double y, const CoefficientValues& v) {
        return generator_power_sum(x, y, v, spec.varsigma1, q1, spec.varsigma2, q2) +
               spec.varsigma1 * (spec.varrho1 == 0.0 ? 1.0 : std::pow(x, spec.varrho1)) +
               spec.varsigma2 * (spec.varrho2 == 0.0 ? 1.0 : std::pow(y, spec.varrho2));
    });
    r.bounds.push_back({"K1", k1.value, "grid sup of L V1 + V1"});
    r.bounds.push_back({"K2", k2.value, "grid sup of L V1' + V2"});
    r.notes.push_back("K1 grid: x,y in [1e-4, " + fmt(k1.x_max) + "], extent change " + fmt(k1.extent_change) +
                      ", density change " + fmt(k1.density_change) + ", argmax (" + fmt(k1.arg_x) + ", " +
                      fmt(k1.arg_y) + ")");
    r.notes.push_back("K2 grid: x,y in [1e-4, " + fmt(k2.x_max) + "], extent change " + fmt(k2.extent_change) +
                      ", density change " + fmt(k2.density_change) + ", auxiliary exponents (" + fmt(q1) +
                      ", " + fmt(q2) + ")");

    const Functional v1 = Functional::weighted_power_sum(spec.varsigma1, spec.theta1, spec.varsigma2, spec.theta2);
    const auto times = save_times(cfg);
    struct Sample {
        PathFunctionals series;
        double average = 0.0;
    };
    const auto samples = map_paths(cfg, c, n_paths, run_options(opts), [&](const PathRecord& p) {
        Sample s;
        s.series.blew_up = p.blew_up;
        if (p.blew_up) return s;
        s.series.values.assign(1, std::vector<double>(times.size()));
        for (std::size_t i = 0; i < times.size(); ++i) s.series.values[0][i] = v1(p.prey_at(i), p.predator_at(i));
        s.average = time_average_moment(p, spec.varrho1, spec.varrho2, spec.varsigma1, spec.varsigma2);
        return s;
    });
    std::vector<PathFunctionals> series;
    std::vector<double> averages;
    for (const auto& s : samples) {
        series.push_back(s.series);
        if (!s.series.blew_up) averages.push_back(s.average);
    }
    const EnsembleSummary summary = aggregate(times, {v1}, series);
    r.n_blowups = summary.n_blowups;
    if (averages.empty()) throw Error(ErrorCode::BlownUpPath, "every path blew up");

    double worst = -std::numeric_limits<double>::infinity();
    MomentEstimate worst_m{};
    for (std::size_t i = 0; i < times.size(); ++i) {
        const MomentEstimate m = estimate_at(summary, 0, i);
        if (m.time < r.tail_window->t_lo) continue;
        r.envelope.push_back({m.time, k1.value, m.point_estimate, m.ci_low, m.ci_high});
        const Verdict v = classify_upper(m.ci_low, m.ci_high, k1.value);
        if (v != Verdict::Pass) r.offenses.push_back({"moment_bound", m.time, k1.value, m.point_estimate, m.ci_low, m.ci_high});
        r.verdict = combine(r.verdict, v);
        if (m.ci_high > worst) {
            worst = m.ci_high;
            worst_m = m;
        }
    }
    r.estimates.push_back({"tail_moment_max", worst_m.point_estimate, worst_m.ci_low, worst_m.ci_high});
    const MeanEstimate avg = mean_with_ci(averages);
    r.estimates.push_back({"time_average", avg.mean, avg.ci_low, avg.ci_high});
    const Verdict av = classify_upper(avg.ci_low, avg.ci_high, k2.value);
    if (av != Verdict::Pass) r.offenses.push_back({"time_average", cfg.t_end, k2.value, avg.mean, avg.ci_low, avg.ci_high});
    r.verdict = combine(r.verdict, av);
    note_blowups(r);
    r.runtime_seconds = seconds_since(start);
    return r;
}

Verdict loggrowth_verdict(std::span<const double> per_path_stats, double theta1, double theta2,
                          QuantileEstimate* q99) {
    const QuantileEstimate q = quantile_with_ci({per_path_stats.begin(), per_path_stats.end()}, 0.99);
    if (q99) *q99 = q;
    // Both exponents zero: the statistic is identically zero and the bound holds by construction.
    if (theta1 == 0.0 && theta2 == 0.0) return Verdict::Pass;
    return classify_with_slack(q, theta1 + theta2, kLogGrowthSlack);
}

TheoremReport check_loggrowth(const SimConfig& cfg, const CoefficientSet& c, double theta1,
                              double theta2, std::int64_t n_paths, const HarnessOptions& opts,
                              const TimeAverageSpec& average) {
    const auto start = Clock::now();
    require_h1(c);
    require_mode(cfg, Mode::Full);
    if (cfg.t_end < 100.0) throw Error(ErrorCode::PreconditionViolated, "log-growth harness needs t_end >= 100");
    if (!(theta1 >= 0.0) || !(theta2 >= 0.0)) throw Error(ErrorCode::PreconditionViolated, "theta must be >= 0");
    for (double th : {average.theta1, average.theta2})
        if (!(th >= 0.0 && th < 1.0)) throw Error(ErrorCode::PreconditionViolated, "time-average exponents must lie in [0,1)");
    if (!(average.varsigma1 > 0.0) || !(average.varsigma2 > 0.0))
        throw Error(ErrorCode::PreconditionViolated, "varsigma weights must be positive");

    TheoremReport r = start_report(TheoremId::T4_1_LogGrowth, opts, n_paths);
    r.tail_window = tail_window(cfg.t_end);

    struct Sample {
        bool blew_up = false;
        double stat = 0.0;
        double average = 0.0;
    };
    const Window w = *r.tail_window;
    const auto samples = map_paths(cfg, c, n_paths, run_options(opts), [&](const PathRecord& p) {
        Sample s;
        s.blew_up = p.blew_up;
        if (p.blew_up) return s;
        s.stat = loggrowth_stat(p, theta1, theta2, w);
        s.average = time_average_moment(p, average.theta1, average.theta2, average.varsigma1, average.varsigma2);
        return s;
    });
    std::vector<double> stats, averages;
    for (const auto& s : samples) {
        if (s.blew_up) {
            ++r.n_blowups;
            continue;
        }
        stats.push_back(s.stat);
        averages.push_back(s.average);
    }
    if (stats.empty()) throw Error(ErrorCode::BlownUpPath, "every path blew up");

    QuantileEstimate q99{};
    const Verdict gv = loggrowth_verdict(stats, theta1, theta2, &q99);
    r.bounds.push_back({"loggrowth_bound", theta1 + theta2, "theta1 + theta2"});
    r.bounds.push_back({"loggrowth_slack", kLogGrowthSlack, "indifference band above the bound"});
    r.estimates.push_back({"loggrowth_q99", q99.value, q99.ci_low, q99.ci_high});
    if (gv != Verdict::Pass) r.offenses.push_back({"loggrowth_q99", cfg.t_end, theta1 + theta2, q99.value, q99.ci_low, q99.ci_high});
    r.verdict = combine(r.verdict, gv);

    const SurrogateResult k = grid_supremum(c, [&](double x, double y, const CoefficientValues& v) {
        const double sum = average.varsigma1 * std::pow(x, average.theta1) + average.varsigma2 * std::pow(y, average.theta2);
        return log_power_sum_drift(x, y, v, average.varsigma1, average.theta1, average.varsigma2, average.theta2) + sum;
    });
    r.bounds.push_back({"K", k.value, "grid sup of P + V, P the Ito drift of ln V"});
    const MeanEstimate avg = mean_with_ci(averages);
    r.estimates.push_back({"time_average", avg.mean, avg.ci_low, avg.ci_high});
    const Verdict av = classify_upper(avg.ci_low, avg.ci_high, k.value);
    if (av != Verdict::Pass) r.offenses.push_back({"time_average", cfg.t_end, k.value, avg.mean, avg.ci_low, avg.ci_high});
    r.verdict = combine(r.verdict, av);

    const double qv = std::max(theta1 * c.sigma1.declared_sup(), theta2 * c.rho1.declared_sup());
    r.bounds.push_back({"martingale_qv_rate", qv * qv, "[max(theta1 sigma1_sup, theta2 rho1_sup)]^2"});
    r.notes.push_back("quadratic-variation rate uses rho1_sup for the predator term (sigma2 vanishes under H1)");
    r.notes.push_back("P uses sigma1^2, rho1^2 and the full cross term -w1 w2 th1 th2 sigma1 rho1 x^th1 y^th2 / V^2");
    r.notes.push_back("K grid: x,y in [1e-4, " + fmt(k.x_max) + "], extent change " + fmt(k.extent_change) +
                      ", density change " + fmt(k.density_change));
    note_blowups(r);
    r.runtime_seconds = seconds_since(start);
    return r;
}

TheoremReport check_predator_extinction(const SimConfig& cfg, const CoefficientSet& c,
                                        std::int64_t n_paths, const HarnessOptions& opts) {
    const auto start = Clock::now();
    require_h1(c);
    require_mode(cfg, Mode::PreyAbsent);
    TheoremReport r = start_report(TheoremId::T4_3_PredatorExtinction, opts, n_paths);
    r.tail_window = tail_window(cfg.t_end);
    const double rate = predator_extinction_rate(c);
    const auto samples = extinction_samples(cfg, c, n_paths, opts, Species::Predator, *r.tail_window);
    assess_extinction(r, samples, rate, "predator");
    r.runtime_seconds = seconds_since(start);
    return r;
}

TheoremReport check_prey_solo(const SimConfig& cfg, const CoefficientSet& c, std::int64_t n_paths,
                              const HarnessOptions& opts) {
    const auto start = Clock::now();
    require_h1(c);
    require_mode(cfg, Mode::PredatorAbsent);
    TheoremReport r = start_report(TheoremId::T4_4_PreySolo, opts, n_paths);
    r.tail_window = tail_window(cfg.t_end);
    const PreySoloCriterion crit = prey_solo_criterion(c);
    r.bounds.push_back({"criterion", crit.value, "sup_t[a1 - sigma1^2/2]"});
    r.notes.push_back("regime " + std::string(to_string(crit.regime)));

    switch (crit.regime) {
        case PreySoloCase::ExtinctionExponential: {
            const auto samples = extinction_samples(cfg, c, n_paths, opts, Species::Prey, *r.tail_window);
            assess_extinction(r, samples, crit.value, "prey");
            break;
        }
        case PreySoloCase::ExtinctionMean: {
            const auto summary = run_ensemble(cfg, c, n_paths, {Functional::log_prey(), Functional::prey()},
                                              run_options(opts));
            r.n_blowups = summary.n_blowups;
            const double b1 = c.b1.declared_inf();
            r.bounds.push_back({"b1_inf", b1, "infimum of b1"});
            for (std::size_t i = 0; i < summary.times.size(); ++i) {
                const MomentEstimate m = estimate_at(summary, 0, i);
                const double z = critical_mean_log_envelope(b1, cfg.x0, m.time);
                r.envelope.push_back({m.time, z, m.point_estimate, m.ci_low, m.ci_high});
                const double allowed = z + kCriticalMeanSeMultiplier * m.standard_error;
                if (m.point_estimate > allowed + kBoundRelTol * std::max(1.0, std::abs(allowed))) {
                    r.offenses.push_back({"mean_log_envelope", m.time, z, m.point_estimate, m.ci_low, m.ci_high});
                    r.verdict = Verdict::Fail;
                }
            }
            const std::size_t lo = summary.time_index(summary.times[summary.times.size() / 2]);
            const MomentEstimate x_mid = estimate_at(summary, 1, lo);
            const MomentEstimate x_end = estimate_at(summary, 1, summary.times.size() - 1);
            r.estimates.push_back({"mean_x_tail_start", x_mid.point_estimate, x_mid.ci_low, x_mid.ci_high});
            r.estimates.push_back({"mean_x_terminal", x_end.point_estimate, x_end.ci_low, x_end.ci_high});
            const MomentEstimate last = estimate_at(summary, 0, summary.times.size() - 1);
            r.estimates.push_back({"mean_log_x_terminal", last.point_estimate, last.ci_low, last.ci_high});
            if (!(x_end.point_estimate < x_mid.point_estimate)) {
                r.notes.push_back("ensemble-mean prey density did not decrease over the tail window");
                r.verdict = combine(r.verdict, Verdict::Inconclusive);
            }
            note_blowups(r);
            break;
        }
        case PreySoloCase::LogGrowth: {
            const Window w = *r.tail_window;
            struct Sample {
                bool blew_up = false;
                double stat = 0.0;
            };
            const auto samples = map_paths(cfg, c, n_paths, run_options(opts), [&](const PathRecord& p) {
                Sample s;
                s.blew_up = p.blew_up;
                if (!p.blew_up) s.stat = loggrowth_stat(p, 1.0, 0.0, w);
                return s;
            });
            std::vector<double> stats;
            for (const auto& s : samples) {
                if (s.blew_up)
                    ++r.n_blowups;
                else
                    stats.push_back(s.stat);
            }
            if (stats.empty()) throw Error(ErrorCode::BlownUpPath, "every path blew up");
            const QuantileEstimate q = quantile_with_ci(stats, 0.99);
            r.bounds.push_back({"loggrowth_bound", 1.0, "limsup ln x_t / ln t"});
            r.bounds.push_back({"loggrowth_slack", kLogGrowthSlack, "indifference band above the bound"});
            r.estimates.push_back({"loggrowth_q99", q.value, q.ci_low, q.ci_high});
            const Verdict v = classify_with_slack(q, 1.0, kLogGrowthSlack);
            if (v != Verdict::Pass) r.offenses.push_back({"loggrowth_q99", cfg.t_end, 1.0, q.value, q.ci_low, q.ci_high});
            r.verdict = combine(r.verdict, v);
            note_blowups(r);
            break;
        }
    }
    r.runtime_seconds = seconds_since(start);
    return r;
}

double gbm_oracle_moment(double a1, double sigma1, double x0, double theta, double t) {
    return std::pow(x0, theta) * std::exp(theta * a1 * t + 0.5 * theta * (theta - 1.0) * sigma1 * sigma1 * t);
}

double critical_mean_log_envelope(double b1_inf, double x0, double t) {
    return -std::log(b1_inf * t + 1.0 / x0);
}

PathRecord deterministic_oracle(const SimConfig& cfg, const CoefficientSet& c) {
    return integrate_deterministic(cfg, c, 10);
}

}  // namespace rdpp
