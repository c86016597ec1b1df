#include "rdpp/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rdpp/errors.hpp"
#include "rdpp/parallel.hpp"

namespace rdpp {

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::EulerMaruyamaLog: return "EULER_MARUYAMA_LOG";
        case Scheme::MilsteinLog: return "MILSTEIN_LOG";
        case Scheme::Rk4Deterministic: return "RK4_DETERMINISTIC";
    }
    return "EULER_MARUYAMA_LOG";
}

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::Full: return "FULL";
        case Mode::PreyAbsent: return "PREY_ABSENT";
        case Mode::PredatorAbsent: return "PREDATOR_ABSENT";
    }
    return "FULL";
}

std::optional<Scheme> parse_scheme(std::string_view s) {
    for (Scheme v : {Scheme::EulerMaruyamaLog, Scheme::MilsteinLog, Scheme::Rk4Deterministic})
        if (s == to_string(v)) return v;
    return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view s) {
    for (Mode v : {Mode::Full, Mode::PreyAbsent, Mode::PredatorAbsent})
        if (s == to_string(v)) return v;
    return std::nullopt;
}

std::int64_t SimConfig::n_steps() const {
    return static_cast<std::int64_t>(std::floor(t_end / dt * (1.0 + 1e-12)));
}

void SimConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
    if (!(t_end > 0.0) || !std::isfinite(t_end)) fail("t_end must be positive and finite");
    if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive and finite");
    if (dt > t_end) fail("dt must not exceed t_end");
    if (t_end / dt > kMaxStepsPerPath) fail("t_end/dt exceeds 1e9 steps");
    if (save_every < 1) fail("save_every must be a positive integer");
    if (!(x0 > 0.0) || !std::isfinite(x0)) fail("x0 must be positive and finite");
    if (!(y0 > 0.0) || !std::isfinite(y0)) fail("y0 must be positive and finite");
    if (!(blowup_guard > 0.0)) fail("blowup_guard must be positive");
    if (std::abs(std::log(x0)) > blowup_guard || std::abs(std::log(y0)) > blowup_guard)
        fail("initial log state exceeds blowup_guard");
}

namespace {

// Unchecked log-space step shared by both schemes and all modes.
inline LogState advance(const LogState& ls, const CoefficientValues& v, double dt, double dw,
                        bool milstein, Mode mode) {
    LogState next = ls;
    const double mcorr = milstein ? 0.5 * (dw * dw - dt) : 0.0;
    if (mode != Mode::PreyAbsent) {
        const double x = std::exp(ls.xi);
        const double hx = v.sigma1 + v.sigma2 * x;
        double drift = v.a1 - 0.5 * hx * hx - v.b1 * x;
        if (mode == Mode::Full) {
            const double y = std::exp(ls.eta);
            drift -= ratio_term(v.c1 * y, x, y, v.e);
        }
        next.xi = ls.xi + drift * dt + hx * dw;
        if (milstein) next.xi += hx * (v.sigma2 * x) * mcorr;
    }
    if (mode != Mode::PredatorAbsent) {
        const double y = std::exp(ls.eta);
        const double hy = v.rho1 + v.rho2 * y;
        double drift = -v.a2 - 0.5 * hy * hy - v.b2 * y;
        if (mode == Mode::Full) {
            const double x = std::exp(ls.xi);
            drift += ratio_term(v.c2 * x, x, y, v.e);
        }
        next.eta = ls.eta + drift * dt + hy * dw;
        if (milstein) next.eta += hy * (v.rho2 * y) * mcorr;
    }
    return next;
}

inline bool within_guard(const LogState& ls, Mode mode, double guard) {
    const bool xi_ok = mode == Mode::PreyAbsent || std::abs(ls.xi) <= guard;
    const bool eta_ok = mode == Mode::PredatorAbsent || std::abs(ls.eta) <= guard;
    return xi_ok && eta_ok;
}

void record(PathRecord& rec, double t, const LogState& ls) {
    rec.times.push_back(t);
    if (rec.has_prey()) rec.xs.push_back(std::exp(ls.xi));
    if (rec.has_predator()) rec.ys.push_back(std::exp(ls.eta));
}

LogState initial_state(const SimConfig& cfg) {
    constexpr double absent = -std::numeric_limits<double>::infinity();
    return {cfg.mode == Mode::PreyAbsent ? absent : std::log(cfg.x0),
            cfg.mode == Mode::PredatorAbsent ? absent : std::log(cfg.y0)};
}

template <class IncrementAt>
PathRecord integrate_log(const SimConfig& cfg, const CoefficientSet& c, IncrementAt&& increment_at) {
    const std::int64_t n = cfg.n_steps();
    const bool milstein = cfg.scheme == Scheme::MilsteinLog;
    const bool constant = c.all_constant();
    const CoefficientValues fixed = c.at(0.0);

    PathRecord rec;
    rec.mode = cfg.mode;
    const auto saves = static_cast<std::size_t>(cfg.n_saves());
    rec.times.reserve(saves);
    if (rec.has_prey()) rec.xs.reserve(saves);
    if (rec.has_predator()) rec.ys.reserve(saves);

    LogState ls = initial_state(cfg);
    record(rec, 0.0, ls);
    for (std::int64_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        const CoefficientValues v = constant ? fixed : c.at(t);
        const LogState next = advance(ls, v, cfg.dt, increment_at(k), milstein, cfg.mode);
        if (!within_guard(next, cfg.mode, cfg.blowup_guard)) {
            rec.blew_up = true;
            rec.blowup_time = static_cast<double>(k + 1) * cfg.dt;
            break;
        }
        ls = next;
        if ((k + 1) % cfg.save_every == 0) record(rec, static_cast<double>(k + 1) * cfg.dt, ls);
    }
    rec.terminal = ls;
    return rec;
}

void require_zero_noise(const CoefficientSet& c) {
    if (!(c.sigma1.identically_zero() && c.sigma2.identically_zero() && c.rho1.identically_zero() &&
          c.rho2.identically_zero()))
        throw Error(ErrorCode::InvalidConfig, "deterministic integration requires all noise coefficients to be zero");
}

LogState checked(const LogState& next, double guard, double t) {
    if (!(std::abs(next.xi) <= guard) || !(std::abs(next.eta) <= guard)) {
        std::ostringstream os;
        os << "log state (" << next.xi << ", " << next.eta << ") exceeds guard " << guard
           << " at t=" << t;
        throw Error(ErrorCode::BlowUp, os.str());
    }
    return next;
}

}  // namespace

LogState em_step_log(const LogState& ls, double t, double dt, double dw, const CoefficientSet& c,
                     double guard) {
    return checked(advance(ls, c.at(t), dt, dw, false, Mode::Full), guard, t + dt);
}

LogState milstein_step_log(const LogState& ls, double t, double dt, double dw,
                           const CoefficientSet& c, double guard) {
    return checked(advance(ls, c.at(t), dt, dw, true, Mode::Full), guard, t + dt);
}

PathRecord simulate_path(const SimConfig& cfg, const CoefficientSet& c, const BrownianDriver& driver) {
    cfg.validate();
    if (cfg.scheme == Scheme::Rk4Deterministic) {
        auto rec = integrate_deterministic(cfg, c, 1);
        rec.path_index = driver.path_index();
        return rec;
    }
    if (driver.dt() != cfg.dt) throw Error(ErrorCode::InvalidConfig, "driver step differs from cfg.dt");
    auto rec = integrate_log(cfg, c, [&](std::int64_t k) {
        return driver.increment(static_cast<std::uint64_t>(k));
    });
    rec.path_index = driver.path_index();
    return rec;
}

PathRecord simulate_path(const SimConfig& cfg, const CoefficientSet& c,
                         std::span<const double> increments) {
    cfg.validate();
    if (cfg.scheme == Scheme::Rk4Deterministic) return integrate_deterministic(cfg, c, 1);
    if (static_cast<std::int64_t>(increments.size()) < cfg.n_steps())
        throw Error(ErrorCode::InvalidConfig, "fewer increments than steps");
    return integrate_log(cfg, c, [&](std::int64_t k) { return increments[static_cast<std::size_t>(k)]; });
}

PathRecord integrate_deterministic(const SimConfig& cfg, const CoefficientSet& c, int substeps) {
    cfg.validate();
    require_zero_noise(c);
    if (substeps < 1) throw Error(ErrorCode::InvalidConfig, "substeps must be >= 1");

    PathRecord rec;
    rec.mode = cfg.mode;
    State s{cfg.mode == Mode::PreyAbsent ? 0.0 : cfg.x0, cfg.mode == Mode::PredatorAbsent ? 0.0 : cfg.y0};
    auto push = [&](double t) {
        rec.times.push_back(t);
        if (rec.has_prey()) rec.xs.push_back(s.x);
        if (rec.has_predator()) rec.ys.push_back(s.y);
    };
    auto f = [&](double t, const State& z) { return drift_xy(z, c.at(t)); };

    push(0.0);
    const double h = cfg.dt / substeps;
    const std::int64_t n = cfg.n_steps();
    for (std::int64_t k = 0; k < n; ++k) {
        for (int j = 0; j < substeps; ++j) {
            const double t = static_cast<double>(k) * cfg.dt + j * h;
            const Components k1 = f(t, s);
            const Components k2 = f(t + 0.5 * h, {s.x + 0.5 * h * k1.prey, s.y + 0.5 * h * k1.predator});
            const Components k3 = f(t + 0.5 * h, {s.x + 0.5 * h * k2.prey, s.y + 0.5 * h * k2.predator});
            const Components k4 = f(t + h, {s.x + h * k3.prey, s.y + h * k3.predator});
            s.x += h / 6.0 * (k1.prey + 2.0 * k2.prey + 2.0 * k3.prey + k4.prey);
            s.y += h / 6.0 * (k1.predator + 2.0 * k2.predator + 2.0 * k3.predator + k4.predator);
        }
        const bool present_ok = (!rec.has_prey() || (s.x > 0.0 && std::isfinite(s.x))) &&
                                (!rec.has_predator() || (s.y > 0.0 && std::isfinite(s.y)));
        if (!present_ok) {
            rec.blew_up = true;
            rec.blowup_time = static_cast<double>(k + 1) * cfg.dt;
            break;
        }
        if ((k + 1) % cfg.save_every == 0) push(static_cast<double>(k + 1) * cfg.dt);
    }
    rec.terminal = {s.x > 0.0 ? std::log(s.x) : -std::numeric_limits<double>::infinity(),
                    s.y > 0.0 ? std::log(s.y) : -std::numeric_limits<double>::infinity()};
    return rec;
}

std::vector<double> coarsen_increments(std::span<const double> fine, std::int64_t factor) {
    if (factor < 1) throw Error(ErrorCode::PreconditionViolated, "coarsening factor must be >= 1");
    const auto f = static_cast<std::size_t>(factor);
    std::vector<double> coarse(fine.size() / f, 0.0);
    for (std::size_t i = 0; i < coarse.size(); ++i)
        for (std::size_t j = 0; j < f; ++j) coarse[i] += fine[i * f + j];
    return coarse;
}

StrongOrderResult estimate_strong_order(const SimConfig& cfg, const CoefficientSet& c,
                                        std::int64_t n_paths, double dt_coarse, int levels,
                                        std::uint64_t master_seed, unsigned threads) {
    if (levels < 3 || levels > kReferenceRefinement)
        throw Error(ErrorCode::InsufficientLevels, "need between 3 and 6 dyadic levels");
    if (!(dt_coarse > 0.0))
        throw Error(ErrorCode::InsufficientLevels, "dt_coarse must be positive");
    const double ratio = cfg.t_end / dt_coarse;
    if (ratio < 1.0 || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw Error(ErrorCode::InsufficientLevels, "t_end must be a positive multiple of dt_coarse");
    if (n_paths < 1) throw Error(ErrorCode::PreconditionViolated, "n_paths must be >= 1");
    if (cfg.scheme == Scheme::Rk4Deterministic)
        throw Error(ErrorCode::InvalidConfig, "strong order requires a stochastic scheme");

    const std::int64_t refine = std::int64_t{1} << kReferenceRefinement;
    const double dt_ref = dt_coarse / static_cast<double>(refine);
    const auto n_ref = static_cast<std::int64_t>(std::llround(ratio)) * refine;

    auto level_cfg = [&](double dt) {
        SimConfig lc = cfg;
        lc.dt = dt;
        lc.t_end = static_cast<double>(n_ref) * dt_ref;
        lc.save_every = static_cast<std::int64_t>(std::llround(lc.t_end / dt));
        return lc;
    };
    const SimConfig ref_cfg = level_cfg(dt_ref);
    ref_cfg.validate();

    // errors[path][level]; NaN marks a path with any blow-up.
    std::vector<std::vector<double>> errors(static_cast<std::size_t>(n_paths));
    parallel_for(n_paths, threads, [&](std::int64_t p) {
        const BrownianDriver driver(master_seed, static_cast<std::uint64_t>(p), dt_ref);
        std::vector<double> fine(static_cast<std::size_t>(n_ref));
        for (std::int64_t k = 0; k < n_ref; ++k)
            fine[static_cast<std::size_t>(k)] = driver.increment(static_cast<std::uint64_t>(k));
        const PathRecord ref = simulate_path(ref_cfg, c, fine);
        auto& row = errors[static_cast<std::size_t>(p)];
        row.assign(static_cast<std::size_t>(levels), std::numeric_limits<double>::quiet_NaN());
        if (ref.blew_up) return;
        for (int l = 0; l < levels; ++l) {
            const std::int64_t factor = refine >> l;
            const auto coarse = coarsen_increments(fine, factor);
            const PathRecord num = simulate_path(level_cfg(dt_ref * static_cast<double>(factor)), c, coarse);
            if (num.blew_up) return;
            const double dx = num.has_prey() ? num.xs.back() - ref.xs.back() : 0.0;
            const double dy = num.has_predator() ? num.ys.back() - ref.ys.back() : 0.0;
            row[static_cast<std::size_t>(l)] = std::hypot(dx, dy);
        }
    });

    StrongOrderResult result{};
    result.reference_dt = dt_ref;
    std::vector<double> sums(static_cast<std::size_t>(levels), 0.0);
    for (const auto& row : errors) {
        if (std::isnan(row.back()) || std::any_of(row.begin(), row.end(), [](double v) { return std::isnan(v); }))
            continue;
        ++result.n_paths_used;
        for (std::size_t l = 0; l < row.size(); ++l) sums[l] += row[l];
    }
    if (result.n_paths_used == 0) throw Error(ErrorCode::BlownUpPath, "every path blew up");

    std::vector<double> lx, ly;
    for (int l = 0; l < levels; ++l) {
        const double dt = dt_coarse / static_cast<double>(std::int64_t{1} << l);
        const double err = sums[static_cast<std::size_t>(l)] / static_cast<double>(result.n_paths_used);
        result.levels.push_back({dt, err});
        lx.push_back(std::log2(dt));
        ly.push_back(std::log2(err));
    }
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    result.order = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (my + result.order * (lx[i] - mx));
        ss += r * r;
    }
    result.fit_residual = std::sqrt(ss / n);
    return result;
}

}  // namespace rdpp
