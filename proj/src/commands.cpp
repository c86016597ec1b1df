#include "rdpp/commands.hpp"

#include <filesystem>
#include <system_error>

#include "rdpp/errors.hpp"
#include "rdpp/montecarlo.hpp"
#include "rdpp/report.hpp"

namespace rdpp {

namespace {

std::filesystem::path output_dir(const RunManifest& m) {
    const std::filesystem::path dir(m.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

HarnessOptions harness_options(const RunManifest& m) {
    HarnessOptions o;
    o.master_seed = m.master_seed;
    o.threads = m.threads;
    o.fingerprint = m.fingerprint();
    o.allow_degenerate = m.allow_degenerate;
    return o;
}

}  // namespace

void cmd_simulate(const RunManifest& m) {
    const auto dir = output_dir(m);
    PathRecord path;
    if (m.sim.scheme == Scheme::Rk4Deterministic) {
        path = integrate_deterministic(m.sim, m.coefficients, 1);
    } else {
        RunOptions o;
        o.master_seed = m.master_seed;
        o.threads = 1;
        o.allow_degenerate = m.allow_degenerate;
        path = std::move(map_paths(m.sim, m.coefficients, 1, o, [](const PathRecord& p) { return p; })[0]);
    }
    write_text_file(dir / "path.csv", render_path_csv(path, m.fingerprint()));
}

void cmd_ensemble(const RunManifest& m) {
    const auto dir = output_dir(m);
    RunOptions o;
    o.master_seed = m.master_seed;
    o.threads = m.threads;
    o.allow_degenerate = m.allow_degenerate;
    const auto s = run_ensemble(m.sim, m.coefficients, m.n_paths,
                                {Functional::prey(), Functional::predator(),
                                 Functional::moment(m.harness.theta1, m.harness.theta2)},
                                o);
    write_text_file(dir / "moments.csv", render_moments_csv(s, m.fingerprint()));
}

TheoremReport run_harness(const RunManifest& m, TheoremId id) {
    const HarnessOptions o = harness_options(m);
    const HarnessParams& h = m.harness;
    switch (id) {
        case TheoremId::T2_1_Positivity: return check_positivity(m.sim, m.coefficients, m.n_paths, o);
        case TheoremId::T3_2_MomentEnvelope:
            return check_moment_envelope(m.sim, m.coefficients, h.theta1, h.theta2, m.n_paths, o);
        case TheoremId::T3_3_MomentBound: return check_moment_bound(m.sim, m.coefficients, h.moment_spec(), m.n_paths, o);
        case TheoremId::T4_1_LogGrowth:
            return check_loggrowth(m.sim, m.coefficients, h.theta1, h.theta2, m.n_paths, o, h.average);
        case TheoremId::T4_3_PredatorExtinction: return check_predator_extinction(m.sim, m.coefficients, m.n_paths, o);
        case TheoremId::T4_4_PreySolo: return check_prey_solo(m.sim, m.coefficients, m.n_paths, o);
    }
    throw Error(ErrorCode::PreconditionViolated, "unknown theorem id");
}

int cmd_verify(const RunManifest& m, TheoremId id) {
    const auto dir = output_dir(m);
    const TheoremReport r = run_harness(m, id);
    write_text_file(dir / ("report_" + std::string(to_string(id)) + ".txt"), render_report(r, m.master_seed));
    if (!r.envelope.empty()) write_text_file(dir / "envelope.csv", render_envelope_csv(r));
    return exit_status(r.verdict);
}

StrongOrderResult cmd_convergence(const RunManifest& m) {
    const auto dir = output_dir(m);
    const StrongOrderResult r = estimate_strong_order(m.sim, m.coefficients, m.n_paths, m.harness.conv_dt_coarse,
                                                      m.harness.conv_levels, m.master_seed, m.threads);
    write_text_file(dir / "order.csv", render_order_csv(r, m.fingerprint()));
    return r;
}

}  // namespace rdpp
