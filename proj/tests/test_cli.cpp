#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "rdpp/commands.hpp"
#include "rdpp/config.hpp"
#include "rdpp/errors.hpp"

using namespace rdpp;
namespace fs = std::filesystem;

namespace {

const std::string kBenchmark = R"(a1.value = 1
a2.value = 0.5
b1.value = 1
b2.value = 1
c1.value = 0.5
c2.value = 0.8
e.value = 1
sigma1.value = 0.1
rho1.value = 0.1
x0 = 1
y0 = 1
t_end = 5
dt = 0.01
save_every = 10
paths = 50
)";

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("rdpp_cli_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

int run_cli(const std::string& args) {
    const std::string cmd = std::string(RDPP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int count_lines(const std::string& s, char skip) {
    int n = 0;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != skip) ++n;
    return n;
}

}  // namespace

TEST_CASE("simulate writes a fingerprinted, reproducible path file") {
    const auto dir = scratch("simulate");
    auto m = parse_config(kBenchmark);
    m.output_dir = (dir / "a").string();
    cmd_simulate(m);
    m.output_dir = (dir / "b").string();
    cmd_simulate(m);
    const auto a = read(dir / "a" / "path.csv");
    CHECK(a == read(dir / "b" / "path.csv"));
    CHECK(a.rfind("# fingerprint=" + m.fingerprint() + "\nt,x,y\n", 0) == 0);
    CHECK(count_lines(a, '#') == 1 + static_cast<int>(std::floor(5.0 / (0.01 * 10))) + 1);
}

TEST_CASE("simulate in absent-species modes") {
    const auto dir = scratch("modes");
    auto m = parse_config(kBenchmark + "mode = PREY_ABSENT\n");
    m.output_dir = dir.string();
    cmd_simulate(m);
    CHECK(read(dir / "path.csv").find("\nt,y\n") != std::string::npos);
    m = parse_config(kBenchmark + "mode = PREDATOR_ABSENT\n");
    m.output_dir = dir.string();
    cmd_simulate(m);
    CHECK(read(dir / "path.csv").find("\nt,x\n") != std::string::npos);
}

TEST_CASE("zero-noise simulate gives monotone times") {
    const auto dir = scratch("zero");
    std::string text = kBenchmark;
    text.replace(text.find("sigma1.value = 0.1"), 18, "sigma1.value = 0");
    text.replace(text.find("rho1.value = 0.1"), 16, "rho1.value = 0");
    auto m = parse_config(text + "scheme = RK4_DETERMINISTIC\n");
    m.output_dir = dir.string();
    cmd_simulate(m);
    std::istringstream in(read(dir / "path.csv"));
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    double prev = -1.0;
    while (std::getline(in, line)) {
        const double t = std::stod(line.substr(0, line.find(',')));
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("ensemble output schema and determinism") {
    const auto dir = scratch("ensemble");
    auto m = parse_config(kBenchmark);
    m.output_dir = (dir / "a").string();
    cmd_ensemble(m);
    m.output_dir = (dir / "b").string();
    m.threads = 3;
    cmd_ensemble(m);
    const auto a = read(dir / "a" / "moments.csv");
    CHECK(a == read(dir / "b" / "moments.csv"));
    CHECK(a.find("\nt,mean_x,mean_y,moment,se,ci_low,ci_high,n_blowups\n") != std::string::npos);
    std::istringstream in(a);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) CHECK(std::count(line.begin(), line.end(), ',') == 7);
}

TEST_CASE("verify writes a report and envelope") {
    const auto dir = scratch("verify");
    auto m = parse_config(kBenchmark);
    m.output_dir = dir.string();
    CHECK(cmd_verify(m, TheoremId::T3_2_MomentEnvelope) == 0);
    const auto report = read(dir / "report_T3_2_MOMENT_ENVELOPE.txt");
    CHECK(report.find("verdict = PASS") != std::string::npos);
    CHECK(report.find("bound.lambda1 = ") != std::string::npos);
    const auto env = read(dir / "envelope.csv");
    CHECK(env.find("\nt,bound,estimate,ci_low,ci_high\n") != std::string::npos);
}

TEST_CASE("CLI exit statuses") {
    const auto dir = scratch("exit");
    write(dir / "bench.cfg", kBenchmark);
    const std::string base = " --config " + (dir / "bench.cfg").string() + " --out " + (dir / "out").string();
    CHECK(run_cli("verify T2_1_POSITIVITY" + base) == 0);
    CHECK(run_cli("verify T3_3_MOMENT_BOUND" + base) > 2);
    CHECK(run_cli("verify T9_UNKNOWN" + base) > 2);
    CHECK(run_cli("simulate --config " + (dir / "missing.cfg").string()) > 2);

    std::string stiff = kBenchmark;
    stiff.replace(stiff.find("b1.value = 1"), 12, "b1.value = 10");
    stiff.replace(stiff.find("x0 = 1"), 6, "x0 = 1000");
    stiff.replace(stiff.find("dt = 0.01"), 9, "dt = 1");
    stiff.replace(stiff.find("save_every = 10"), 15, "save_every = 1");
    write(dir / "stiff.cfg", stiff);
    CHECK(run_cli("verify T2_1_POSITIVITY --config " + (dir / "stiff.cfg").string() + " --out " + (dir / "out").string()) == 1);

    write(dir / "bad.cfg", kBenchmark + "bogus = 1\n");
    CHECK(run_cli("simulate --config " + (dir / "bad.cfg").string() + " --out " + (dir / "out").string()) > 2);

    CHECK(run_cli("convergence --paths 16" + base) == 0);
    const auto order = read(dir / "out" / "order.csv");
    CHECK(order.find("\ndt,strong_error\n") != std::string::npos);
    CHECK(order.find("# slope=") != std::string::npos);
}

TEST_CASE("CLI seed override changes the fingerprint") {
    const auto dir = scratch("seed");
    write(dir / "bench.cfg", kBenchmark);
    const std::string cfg = " --config " + (dir / "bench.cfg").string();
    REQUIRE(run_cli("simulate" + cfg + " --seed 1 --out " + (dir / "a").string()) == 0);
    REQUIRE(run_cli("simulate" + cfg + " --seed 2 --out " + (dir / "b").string()) == 0);
    REQUIRE(run_cli("simulate" + cfg + " --seed 1 --out " + (dir / "c").string()) == 0);
    CHECK(read(dir / "a" / "path.csv") != read(dir / "b" / "path.csv"));
    CHECK(read(dir / "a" / "path.csv") == read(dir / "c" / "path.csv"));
}
