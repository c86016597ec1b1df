#include <doctest.h>

#include <cmath>
#include <vector>

#include "rdpp/errors.hpp"
#include "rdpp/verify.hpp"

using namespace rdpp;

namespace {

CoefficientSet benchmark() { return CoefficientSet::constants(1, 0.5, 1, 1, 0.5, 0.8, 1, 0.1, 0, 0.1, 0); }
CoefficientSet benchmark_h2() { return CoefficientSet::constants(1, 0.5, 1, 1, 0.5, 0.8, 1, 0.1, 0.05, 0.1, 0.05); }

SimConfig config(double t_end, double dt, std::int64_t save_every, Mode mode = Mode::Full) {
    SimConfig cfg;
    cfg.t_end = t_end;
    cfg.dt = dt;
    cfg.save_every = save_every;
    cfg.mode = mode;
    return cfg;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::IoError;
}

void check_offense_schema(const TheoremReport& r) {
    if (r.verdict == Verdict::Pass) return;
    CHECK((!r.offenses.empty() || !r.notes.empty()));
    for (const auto& o : r.offenses) {
        CHECK_FALSE(o.check.empty());
        CHECK(std::isfinite(o.time));
        CHECK(std::isfinite(o.bound));
        CHECK(o.ci_low <= o.ci_high);
    }
}

}  // namespace

TEST_CASE("GBM oracle closed form") {
    CHECK(gbm_oracle_moment(1.0, 0.0, 1.0, 1.0, 1.0) == doctest::Approx(std::exp(1.0)));
    CHECK(gbm_oracle_moment(1.0, 0.2, 1.0, 1.0, 1.0) == doctest::Approx(2.718282).epsilon(1e-6));
    CHECK(gbm_oracle_moment(1.0, 0.2, 3.0, 0.0, 5.0) == 1.0);
    CHECK(gbm_oracle_moment(1.0, 0.2, 1.0, 2.0, 1.0) == doctest::Approx(std::exp(2.04)).epsilon(1e-14));
    CHECK(gbm_oracle_moment(1.0, 0.2, 1.0, 2.0, 1.0) == doctest::Approx(7.6906).epsilon(1e-4));
}

TEST_CASE("critical comparison envelope") {
    for (double t : {0.0, 1.0, 10.0, 50.0}) CHECK(critical_mean_log_envelope(1.0, 1.0, t) == doctest::Approx(-std::log(t + 1.0)));
    CHECK(critical_mean_log_envelope(2.0, 4.0, 0.0) == doctest::Approx(std::log(4.0)));
}

TEST_CASE("verdict classification") {
    CHECK(classify_upper(0.5, 0.9, 1.0) == Verdict::Pass);
    CHECK(classify_upper(0.5, 1.0, 1.0) == Verdict::Pass);
    CHECK(classify_upper(0.9, 1.1, 1.0) == Verdict::Inconclusive);
    CHECK(classify_upper(1.1, 1.2, 1.0) == Verdict::Fail);
    CHECK(classify_with_slack({1.9, 1.8, 1.99}, 2.0, 0.1) == Verdict::Pass);
    CHECK(classify_with_slack({2.0, 2.0, 2.0}, 2.0, 0.1) == Verdict::Inconclusive);
    CHECK(classify_with_slack({2.05, 2.02, 2.08}, 2.0, 0.1) == Verdict::Inconclusive);
    CHECK(classify_with_slack({2.3, 2.2, 2.4}, 2.0, 0.1) == Verdict::Fail);
    CHECK(combine(Verdict::Pass, Verdict::Inconclusive) == Verdict::Inconclusive);
    CHECK(combine(Verdict::Fail, Verdict::Inconclusive) == Verdict::Fail);
    CHECK(exit_status(Verdict::Pass) == 0);
    CHECK(exit_status(Verdict::Fail) == 1);
    CHECK(exit_status(Verdict::Inconclusive) == 2);
}

TEST_CASE("theorem ids round-trip") {
    for (auto id : {TheoremId::T2_1_Positivity, TheoremId::T3_2_MomentEnvelope, TheoremId::T3_3_MomentBound,
                    TheoremId::T4_1_LogGrowth, TheoremId::T4_3_PredatorExtinction, TheoremId::T4_4_PreySolo})
        CHECK(parse_theorem_id(to_string(id)) == id);
    CHECK_FALSE(parse_theorem_id("T9_9").has_value());
}

TEST_CASE("log-growth verdict on the equality path family") {
    // x_t = y_t = t gives (ln x + ln y)/ln t = 2 on every path.
    const std::vector<double> stats(500, 2.0);
    CHECK(loggrowth_verdict(stats, 1, 1) == Verdict::Inconclusive);
    const std::vector<double> zeros(500, 0.0);
    CHECK(loggrowth_verdict(zeros, 0, 0) == Verdict::Pass);
    const std::vector<double> low(500, 1.5);
    CHECK(loggrowth_verdict(low, 1, 1) == Verdict::Pass);
    const std::vector<double> high(500, 2.5);
    CHECK(loggrowth_verdict(high, 1, 1) == Verdict::Fail);
}

TEST_CASE("positivity harness") {
    const auto ok = check_positivity(config(2.0, 1e-3, 100), benchmark(), 50, {.threads = 1});
    CHECK(ok.verdict == Verdict::Pass);
    CHECK(ok.n_blowups == 0);

    auto noiseless = CoefficientSet::constants(1, 0.5, 1, 1, 0.5, 0.8, 1, 0, 0, 0, 0);
    const auto z = check_positivity(config(2.0, 1e-3, 100), noiseless, 10, {.threads = 1, .allow_degenerate = true});
    CHECK(z.verdict == Verdict::Pass);
    CHECK(z.n_blowups == 0);

    auto cfg = config(5.0, 1.0, 1);
    cfg.x0 = 1000.0;
    const auto stiff = CoefficientSet::constants(1, 0.5, 10, 1, 0.5, 0.8, 1, 0.1, 0, 0.1, 0);
    const auto bad = check_positivity(cfg, stiff, 20, {.threads = 1});
    CHECK(bad.verdict == Verdict::Fail);
    CHECK(bad.n_blowups == 20);
    REQUIRE(bad.estimate("blowup_fraction") != nullptr);
    CHECK(bad.estimate("blowup_fraction")->value == 1.0);
    check_offense_schema(bad);
}

TEST_CASE("moment envelope harness") {
    const auto r = check_moment_envelope(config(5.0, 1e-3, 100), benchmark(), 1, 1, 300, {.threads = 0});
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.envelope.size() == 51);
    CHECK(r.envelope.front().bound == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.envelope.front().estimate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.bound("lambda1")->value == doctest::Approx(0.6963).epsilon(1e-4));
    CHECK(code_of([] { check_moment_envelope(config(1, 1e-2, 10), benchmark_h2(), 1, 1, 5); }) == ErrorCode::NotH1);
    CHECK(code_of([] { check_moment_envelope(config(1, 1e-2, 10, Mode::PreyAbsent), benchmark(), 1, 1, 5); }) ==
          ErrorCode::WrongMode);
}

TEST_CASE("moment bound harness") {
    MomentSpec bad;
    bad.theta1 = 1.5;
    CHECK(code_of([&] { check_moment_bound(config(10, 1e-2, 10), benchmark_h2(), bad, 5); }) ==
          ErrorCode::PreconditionViolated);
    CHECK(code_of([] { check_moment_bound(config(10, 1e-2, 10), benchmark(), MomentSpec{}, 5); }) == ErrorCode::NotH2);

    MomentSpec flat;
    flat.varrho1 = flat.varrho2 = 0.0;
    const auto r = check_moment_bound(config(10, 1e-2, 10), benchmark_h2(), flat, 1000, {.threads = 0});
    CHECK(r.estimate("time_average")->value == doctest::Approx(2.0));
    CHECK(r.bound("K2")->value >= 2.0);
    CHECK(r.verdict == Verdict::Pass);
    check_offense_schema(r);
}

TEST_CASE("log-growth harness preconditions") {
    CHECK(code_of([] { check_loggrowth(config(50, 1e-2, 10), benchmark(), 1, 1, 5); }) == ErrorCode::PreconditionViolated);
    CHECK(code_of([] { check_loggrowth(config(100, 1e-2, 10), benchmark_h2(), 1, 1, 5); }) == ErrorCode::NotH1);
    CHECK(code_of([] { check_loggrowth(config(100, 1e-2, 10, Mode::PreyAbsent), benchmark(), 1, 1, 5); }) ==
          ErrorCode::WrongMode);
    const auto r = check_loggrowth(config(100, 1e-2, 10), benchmark(), 0, 0, 20, {.threads = 0});
    CHECK(r.estimate("loggrowth_q99")->value == 0.0);
    CHECK(r.tail_window->t_lo == 50.0);
}

TEST_CASE("predator extinction harness") {
    const auto c = CoefficientSet::constants(1, 0.5, 1, 1, 0.5, 0.8, 1, 0.1, 0, 0.2, 0);
    CHECK(code_of([&] { check_predator_extinction(config(100, 1e-2, 10), c, 5); }) == ErrorCode::WrongMode);
    const auto r = check_predator_extinction(config(100, 1e-2, 10, Mode::PreyAbsent), c, 200, {.threads = 0});
    CHECK(r.bound("exponential_rate")->value == doctest::Approx(-0.52));
    CHECK(r.estimate("slope_median")->value <= -0.52 + kRateSlack);
    CHECK(r.estimate("extinction_fraction")->value >= 0.99);
    check_offense_schema(r);
}

TEST_CASE("terminal extinction is monotone in the horizon for the linear case") {
    const auto c = CoefficientSet::constants(1, 0.5, 1, 0, 0.5, 0.8, 1, 0.1, 0, 0.2, 0);
    HarnessOptions o{.threads = 0, .allow_degenerate = true};
    double prev = -1.0;
    for (double t_end : {20.0, 40.0, 80.0}) {
        const auto r = check_predator_extinction(config(t_end, 1e-2, 10, Mode::PreyAbsent), c, 200, o);
        const double frac = r.estimate("extinction_fraction")->value;
        CHECK(frac >= prev);
        prev = frac;
    }
    CHECK(prev >= 0.99);
}

TEST_CASE("prey solo harness dispatch") {
    auto with = [](double a1, double s1) { return CoefficientSet::constants(a1, 0.5, 1, 1, 0.5, 0.8, 1, s1, 0, 0.1, 0); };
    CHECK(code_of([&] { check_prey_solo(config(10, 1e-2, 10), with(1, 0.1), 5); }) == ErrorCode::WrongMode);
    const auto ii = check_prey_solo(config(10, 1e-2, 10, Mode::PredatorAbsent), with(0.02, 0.2), 400, {.threads = 0});
    CHECK(ii.envelope.size() == 101);
    CHECK(ii.envelope.back().bound == doctest::Approx(-std::log(11.0)));
    CHECK(ii.verdict == Verdict::Pass);
    const auto iii = check_prey_solo(config(20, 1e-2, 10, Mode::PredatorAbsent), with(1, 0.1), 100, {.threads = 0});
    CHECK(iii.verdict == Verdict::Pass);
    CHECK(iii.bound("loggrowth_bound")->value == 1.0);
}
