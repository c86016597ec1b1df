#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rdpp/coefficients.hpp"
#include "rdpp/model.hpp"
#include "rdpp/rng.hpp"

namespace rdpp {

enum class Scheme { EulerMaruyamaLog, MilsteinLog, Rk4Deterministic };
enum class Mode { Full, PreyAbsent, PredatorAbsent };

std::string_view to_string(Scheme s);
std::string_view to_string(Mode m);
std::optional<Scheme> parse_scheme(std::string_view s);
std::optional<Mode> parse_mode(std::string_view s);

inline constexpr double kDefaultBlowupGuard = 400.0;
inline constexpr double kMaxStepsPerPath = 1e9;

struct SimConfig {
    double t_end = 1.0;
    double dt = 1e-3;
    std::int64_t save_every = 100;
    double x0 = 1.0;
    double y0 = 1.0;
    Scheme scheme = Scheme::EulerMaruyamaLog;
    Mode mode = Mode::Full;
    double blowup_guard = kDefaultBlowupGuard;

    /// Throws Error(InvalidConfig) describing the first violated invariant.
    void validate() const;

    /// floor(t_end/dt), tolerant of representation error in the ratio.
    std::int64_t n_steps() const;
    /// Number of save points, including t = 0.
    std::int64_t n_saves() const { return n_steps() / save_every + 1; }
};

/// Sampled trajectory on the save grid. Absent species keep an empty vector.
struct PathRecord {
    Mode mode = Mode::Full;
    std::vector<double> times;
    std::vector<double> xs;
    std::vector<double> ys;
    bool blew_up = false;
    double blowup_time = 0.0;
    LogState terminal{0.0, 0.0};
    std::uint64_t path_index = 0;

    bool has_prey() const noexcept { return mode != Mode::PreyAbsent; }
    bool has_predator() const noexcept { return mode != Mode::PredatorAbsent; }
    /// Density of the absent species is reported as 0.
    double prey_at(std::size_t i) const { return has_prey() ? xs[i] : 0.0; }
    double predator_at(std::size_t i) const { return has_predator() ? ys[i] : 0.0; }
};

/// One Euler-Maruyama step of the log-coordinate system; both components
/// are driven by the same increment `dw`. Throws Error(BlowUp) if the
/// result leaves [-guard, guard].
LogState em_step_log(const LogState& ls, double t, double dt, double dw, const CoefficientSet& c,
                     double guard = kDefaultBlowupGuard);

/// Euler-Maruyama plus the per-component Milstein correction
/// 0.5*h*h'*(dw^2 - dt). Identical to em_step_log under H1.
LogState milstein_step_log(const LogState& ls, double t, double dt, double dw,
                           const CoefficientSet& c, double guard = kDefaultBlowupGuard);

/// Integrates one path in log coordinates. Absent-species modes integrate
/// the reduced one-dimensional equation of the surviving species.
/// Blow-up terminates the path and is recorded, never thrown.
PathRecord simulate_path(const SimConfig& cfg, const CoefficientSet& c, const BrownianDriver& driver);

/// Same as simulate_path but with caller-supplied increments (one per step).
PathRecord simulate_path(const SimConfig& cfg, const CoefficientSet& c,
                         std::span<const double> increments);

/// Deterministic RK4 integration of the noise-free system in original
/// coordinates with `substeps` steps per cfg.dt, sampled on cfg's save grid.
/// Throws Error(InvalidConfig) if any noise coefficient is nonzero.
PathRecord integrate_deterministic(const SimConfig& cfg, const CoefficientSet& c, int substeps = 1);

struct LevelError {
    double dt;
    double strong_error;
};

struct StrongOrderResult {
    double order;
    double fit_residual;  // root-mean-square residual of the log2-log2 fit
    std::vector<LevelError> levels;
    double reference_dt;
    std::int64_t n_paths_used;
};

inline constexpr int kReferenceRefinement = 6;  // reference step = dt_coarse / 2^6

/// Strong error at t_end against a coupled reference at dt_coarse/2^6 for
/// `levels` dyadic step sizes dt_coarse, dt_coarse/2, ...; paths share the
/// fine increments (coarse increments are sums of fine ones).
/// Error is E|(x,y)_num - (x,y)_ref| in original coordinates.
StrongOrderResult estimate_strong_order(const SimConfig& cfg, const CoefficientSet& c,
                                        std::int64_t n_paths, double dt_coarse, int levels = 4,
                                        std::uint64_t master_seed = 0, unsigned threads = 1);

/// Sums consecutive blocks of `factor` fine increments.
std::vector<double> coarsen_increments(std::span<const double> fine, std::int64_t factor);

}  // namespace rdpp
