#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "rdpp/commands.hpp"
#include "rdpp/config.hpp"
#include "rdpp/errors.hpp"
#include "rdpp/report.hpp"

namespace {

constexpr int kErrorExit = 3;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> paths;
    std::string out = ".";
    unsigned threads = 0;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "Config file (key = value)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", f.seed, "Master seed (overrides the config)");
    cmd->add_option("--paths", f.paths, "Number of paths (overrides the config)")->check(CLI::PositiveNumber);
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--threads", f.threads, "Worker threads, 0 = auto");
}

rdpp::RunManifest manifest(const Flags& f) {
    rdpp::RunManifest m = rdpp::load_config(f.config);
    if (f.seed) m.master_seed = *f.seed;
    if (f.paths) m.n_paths = *f.paths;
    m.output_dir = f.out;
    m.threads = f.threads;
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic ratio-dependent predator-prey simulator and theorem checker"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(rdpp::kArtifactVersion));

    Flags f;
    auto* simulate = app.add_subcommand("simulate", "Write one trajectory to path.csv");
    auto* ensemble = app.add_subcommand("ensemble", "Write ensemble moments to moments.csv");
    auto* verify = app.add_subcommand("verify", "Run a theorem harness; exit 0 PASS, 1 FAIL, 2 INCONCLUSIVE");
    auto* convergence = app.add_subcommand("convergence", "Estimate the strong order into order.csv");
    for (auto* cmd : {simulate, ensemble, verify, convergence}) add_flags(cmd, f);
    std::string theorem;
    verify->add_option("theorem_id", theorem, "T2_1_POSITIVITY, T3_2_MOMENT_ENVELOPE, T3_3_MOMENT_BOUND, "
                                              "T4_1_LOGGROWTH, T4_3_PREDATOR_EXTINCTION or T4_4_PREY_SOLO")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kErrorExit;
    }

    try {
        const rdpp::RunManifest m = manifest(f);
        if (simulate->parsed()) {
            rdpp::cmd_simulate(m);
        } else if (ensemble->parsed()) {
            rdpp::cmd_ensemble(m);
        } else if (verify->parsed()) {
            const auto id = rdpp::parse_theorem_id(theorem);
            if (!id) {
                std::cerr << "error: unknown theorem id '" << theorem << "'\n";
                return kErrorExit;
            }
            const int status = rdpp::cmd_verify(m, *id);
            std::cout << rdpp::to_string(*id) << ' '
                      << (status == 0 ? "PASS" : status == 1 ? "FAIL" : "INCONCLUSIVE") << '\n';
            return status;
        } else if (convergence->parsed()) {
            const auto r = rdpp::cmd_convergence(m);
            std::cout << "slope=" << rdpp::format_double(r.order) << '\n';
        }
    } catch (const rdpp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kErrorExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kErrorExit;
    }
    return 0;
}
