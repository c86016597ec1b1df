#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdpp/integrate.hpp"
#include "rdpp/model.hpp"
#include "rdpp/montecarlo.hpp"

namespace rdpp {

enum class TheoremId {
    T2_1_Positivity,
    T3_2_MomentEnvelope,
    T3_3_MomentBound,
    T4_1_LogGrowth,
    T4_3_PredatorExtinction,
    T4_4_PreySolo,
};

std::string_view to_string(TheoremId id);
std::optional<TheoremId> parse_theorem_id(std::string_view s);

enum class Verdict { Pass, Fail, Inconclusive };
std::string_view to_string(Verdict v);

/// Worst of two verdicts (FAIL > INCONCLUSIVE > PASS).
Verdict combine(Verdict a, Verdict b);

struct BoundEntry {
    std::string name;
    double value;
    std::string formula;
};

struct EstimateEntry {
    std::string name;
    double value;
    double ci_low;
    double ci_high;
};

/// A save time (or scalar check) where the estimate did not clear its bound.
struct Offense {
    std::string check;
    double time;
    double bound;
    double estimate;
    double ci_low;
    double ci_high;
};

struct EnvelopeRow {
    double t;
    double bound;
    double estimate;
    double ci_low;
    double ci_high;
};

struct TheoremReport {
    TheoremId theorem_id{};
    std::string fingerprint;
    Verdict verdict = Verdict::Pass;
    std::vector<BoundEntry> bounds;
    std::vector<EstimateEntry> estimates;
    std::vector<Offense> offenses;
    std::vector<std::string> notes;
    std::optional<Window> tail_window;
    std::vector<EnvelopeRow> envelope;  // per save time, when the check is time-resolved
    std::int64_t n_paths = 0;
    std::int64_t n_blowups = 0;
    double runtime_seconds = 0.0;

    const BoundEntry* bound(std::string_view name) const;
    const EstimateEntry* estimate(std::string_view name) const;
};

struct HarnessOptions {
    std::uint64_t master_seed = 0;
    unsigned threads = 0;
    std::string fingerprint;
    /// Skip coefficient validation (degenerate oracle configurations only).
    bool allow_degenerate = false;
};

inline constexpr double kRateSlack = 0.05;
inline constexpr double kLogGrowthSlack = 0.1;
inline constexpr double kMaxBlowupFraction = 1e-3;
inline constexpr double kExtinctionLevel = 1e-6;        // relative to the initial density
inline constexpr double kExtinctionFraction = 0.99;
inline constexpr double kCriticalMeanSeMultiplier = 3.0;
/// Relative floating tolerance when comparing an estimate against a bound.
inline constexpr double kBoundRelTol = 1e-12;

/// Upper-bound check: PASS if ci_high <= bound, FAIL if ci_low > bound,
/// INCONCLUSIVE when the interval straddles it.
Verdict classify_upper(double ci_low, double ci_high, double bound);

/// Upper-bound check of a limsup-type quantile with an indifference band:
/// PASS if ci_high < bound, FAIL if ci_low > bound + slack, else INCONCLUSIVE.
/// Equality with the bound is therefore never a PASS.
Verdict classify_with_slack(const QuantileEstimate& q, double bound, double slack);

TheoremReport check_positivity(const SimConfig& cfg, const CoefficientSet& c, std::int64_t n_paths,
                               const HarnessOptions& opts = {});

TheoremReport check_moment_envelope(const SimConfig& cfg, const CoefficientSet& c, double theta1,
                                    double theta2, std::int64_t n_paths, const HarnessOptions& opts = {});

TheoremReport check_moment_bound(const SimConfig& cfg, const CoefficientSet& c, const MomentSpec& spec,
                                 std::int64_t n_paths, const HarnessOptions& opts = {});

/// Exponents and weights of the time-average claim checked alongside the
/// log-growth bound; exponents must lie in [0, 1).
struct TimeAverageSpec {
    double theta1 = 0.5;
    double theta2 = 0.5;
    double varsigma1 = 1.0;
    double varsigma2 = 1.0;
};

TheoremReport check_loggrowth(const SimConfig& cfg, const CoefficientSet& c, double theta1,
                              double theta2, std::int64_t n_paths, const HarnessOptions& opts = {},
                              const TimeAverageSpec& average = {});

/// Verdict of the log-growth claim from per-path tail-window statistics.
Verdict loggrowth_verdict(std::span<const double> per_path_stats, double theta1, double theta2,
                          QuantileEstimate* q99 = nullptr);

TheoremReport check_predator_extinction(const SimConfig& cfg, const CoefficientSet& c,
                                        std::int64_t n_paths, const HarnessOptions& opts = {});

TheoremReport check_prey_solo(const SimConfig& cfg, const CoefficientSet& c, std::int64_t n_paths,
                              const HarnessOptions& opts = {});

/// E[x_t^theta] for geometric Brownian motion dx = a1 x dt + sigma1 x dw.
double gbm_oracle_moment(double a1, double sigma1, double x0, double theta, double t);

/// Mean-log comparison solution -ln(b1_inf t + exp(-xi0)) for the critical prey case.
double critical_mean_log_envelope(double b1_inf, double x0, double t);

/// RK4 reference for the zero-noise model at cfg.dt/10, on cfg's save grid.
PathRecord deterministic_oracle(const SimConfig& cfg, const CoefficientSet& c);

/// Exit status mirroring a verdict: 0 PASS, 1 FAIL, 2 INCONCLUSIVE.
int exit_status(Verdict v);

}  // namespace rdpp
