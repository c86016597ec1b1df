#include <doctest.h>

#include <cmath>
#include <random>

#include "rdpp/errors.hpp"
#include "rdpp/model.hpp"

using namespace rdpp;

namespace {

CoefficientSet benchmark() { return CoefficientSet::constants(1, 0.5, 1, 1, 0.5, 0.8, 1, 0.1, 0, 0.1, 0); }
CoefficientSet benchmark_h2() { return CoefficientSet::constants(1, 0.5, 1, 1, 0.5, 0.8, 1, 0.1, 0.05, 0.1, 0.05); }

// Independent evaluation of the envelope constants for constant coefficients.
struct Oracle {
    double d1, d2, lambda1, lambda2;
};

Oracle oracle(double a1, double a2, double b1, double b2, double c2, double s1, double r1, double th1,
              double th2, double x0, double y0) {
    const double d1 = 0.5 * s1 * s1 * th1 * (th1 - 1) + 0.5 * r1 * r1 * th2 * (th2 - 1) + s1 * r1 * th1 * th2 +
                      th1 * a1 + (c2 - a2) * th2;
    const double d2 = std::min(th1 * b1, th2 * b2);
    const double s = th1 + th2;
    const double l1 = d1 / d2 - s * (1 - std::log(s));
    const double l2 = th1 * std::log(x0) + th2 * std::log(y0) + s * (1 - std::log(s)) - d1 / d2;
    return {d1, d2, l1, l2};
}

}  // namespace

TEST_CASE("benchmark envelope constants") {
    const auto k = theorem2_constants(benchmark(), 1, 1, 1, 1);
    CHECK(std::abs(k.d1 - 1.31) < 1e-12);
    CHECK(k.d2 == 1.0);
    CHECK(k.theta == 0.5);
    const double l1 = 1.31 - 2.0 * (1.0 - std::log(2.0));
    CHECK(std::abs(k.lambda1 - l1) < 1e-12);
    CHECK(std::abs(k.lambda2 + l1) < 1e-12);
    CHECK(std::abs(k.lambda1 - 0.6963) < 1e-4);
    CHECK(std::abs(k.envelope(0.0) - 1.0) < 1e-12);
    CHECK(std::abs(std::exp(k.lambda1) - 2.006) < 1e-3);
}

TEST_CASE("envelope increases monotonically when lambda2 < 0") {
    const auto k = theorem2_constants(benchmark(), 1, 1, 1, 1);
    REQUIRE(k.lambda2 < 0);
    double prev = k.envelope(0.0);
    for (int i = 1; i <= 200; ++i) {
        const double v = k.envelope(0.25 * i);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(prev <= std::exp(k.lambda1));
}

TEST_CASE("envelope constants match an independent evaluation and are tight at t=0") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const double a1 = u(gen), a2 = u(gen), b1 = u(gen), b2 = u(gen), c1 = u(gen), c2 = u(gen), e = u(gen);
        const double s1 = 0.5 * u(gen), r1 = 0.5 * u(gen);
        const double th1 = u(gen), th2 = u(gen), x0 = u(gen), y0 = u(gen);
        const auto c = CoefficientSet::constants(a1, a2, b1, b2, c1, c2, e, s1, 0, r1, 0);
        const auto k = theorem2_constants(c, th1, th2, x0, y0);
        const auto o = oracle(a1, a2, b1, b2, c2, s1, r1, th1, th2, x0, y0);
        CHECK(std::abs(k.d1 - o.d1) <= 1e-12 * std::max(1.0, std::abs(o.d1)));
        CHECK(k.d2 == o.d2);
        CHECK(std::abs(k.lambda1 - o.lambda1) <= 1e-12 * std::max(1.0, std::abs(o.lambda1)));
        const double identity = th1 * std::log(x0) + th2 * std::log(y0);
        CHECK(std::abs(k.lambda1 + k.lambda2 - identity) < 1e-12);
        CHECK(std::abs(k.envelope(0.0) - std::pow(x0, th1) * std::pow(y0, th2)) <
              1e-12 * std::pow(x0, th1) * std::pow(y0, th2));
    }
}

TEST_CASE("d1 takes the supremum over time for periodic coefficients") {
    auto c = benchmark();
    c.a1 = CoefficientFn::sinusoidal(1.0, 0.2, 3.0);
    const auto k = theorem2_constants(c, 1, 1, 1, 1);
    CHECK(std::abs(k.d1 - 1.51) < 1e-9);
    CHECK(k.d1_grid_spacing > 0.0);
}

TEST_CASE("envelope constants preconditions") {
    CHECK_THROWS_AS(theorem2_constants(benchmark_h2(), 1, 1, 1, 1), Error);
    try {
        theorem2_constants(benchmark(), 0, 1, 1, 1);
        FAIL("expected a precondition error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PreconditionViolated);
    }
    CHECK_THROWS_AS(theorem2_constants(benchmark(), 1, 1, -1, 1), Error);
}

TEST_CASE("hypothesis classification") {
    CHECK(classify_hypothesis(benchmark()) == Hypothesis::H1);
    CHECK(classify_hypothesis(benchmark_h2()) == Hypothesis::H2);
    auto partial = benchmark();
    partial.sigma2 = CoefficientFn::constant(0.05);
    CHECK(classify_hypothesis(partial) == Hypothesis::Neither);
    auto noiseless = benchmark();
    noiseless.sigma1 = CoefficientFn::constant(0.0);
    CHECK(classify_hypothesis(noiseless) == Hypothesis::Neither);
    try {
        require_h1(benchmark_h2());
        FAIL("expected NotH1");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotH1);
    }
    try {
        require_h2(benchmark());
        FAIL("expected NotH2");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotH2);
    }
}

TEST_CASE("validation reports infimum violations") {
    CHECK(validate_coefficients(benchmark()).ok());
    auto c = benchmark();
    c.a1 = CoefficientFn::sinusoidal(1.0, 2.0, 1.0);
    const auto r = validate_coefficients(c);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations[0].coefficient == "a1");
    CHECK(r.violations[0].bound == doctest::Approx(-1.0));
    auto neg = benchmark();
    neg.rho1 = CoefficientFn::constant(-0.1);
    CHECK_FALSE(validate_coefficients(neg).ok());
}

TEST_CASE("Ito consistency of the log drift") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.01, 3.0);
    const auto v = benchmark_h2().at(0.0);
    for (int i = 0; i < 1000; ++i) {
        const State s{u(gen), u(gen)};
        const LogState ls{std::log(s.x), std::log(s.y)};
        const auto f = drift_xy(s, v);
        const auto g = diffusion_xy(s, v);
        const auto fl = drift_log(ls, v);
        const auto gl = diffusion_log(ls, v);
        CHECK(gl.prey == doctest::Approx(g.prey / s.x).epsilon(1e-13));
        CHECK(gl.predator == doctest::Approx(g.predator / s.y).epsilon(1e-13));
        CHECK(fl.prey == doctest::Approx(f.prey / s.x - 0.5 * gl.prey * gl.prey).epsilon(1e-12));
        CHECK(fl.predator == doctest::Approx(f.predator / s.y - 0.5 * gl.predator * gl.predator).epsilon(1e-12));
    }
}

TEST_CASE("drift at the benchmark point") {
    const auto f = drift_xy({1.0, 1.0}, benchmark().at(0.0));
    CHECK(f.prey == doctest::Approx(1.0 - 1.0 - 0.25));
    CHECK(f.predator == doctest::Approx(-0.5 - 1.0 + 0.4));
    CHECK(ratio_term(1.0, 0.0, 0.0, 1.0) == 0.0);
}

TEST_CASE("predator extinction rate") {
    const auto c = CoefficientSet::constants(1, 0.5, 1, 1, 0.5, 0.8, 1, 0.1, 0, 0.2, 0);
    CHECK(predator_extinction_rate(c) == doctest::Approx(-0.52).epsilon(1e-14));
    const auto louder = CoefficientSet::constants(1, 0.5, 1, 1, 0.5, 0.8, 1, 0.1, 0, 0.3, 0);
    CHECK(predator_extinction_rate(louder) < predator_extinction_rate(c));
    auto periodic = c;
    periodic.a2 = CoefficientFn::sinusoidal(0.5, 0.1, 2.0);
    CHECK(predator_extinction_rate(periodic) == doctest::Approx(-0.42).epsilon(1e-9));
}

TEST_CASE("prey solo criterion regimes") {
    auto with = [](double a1, double s1) { return CoefficientSet::constants(a1, 0.5, 1, 1, 0.5, 0.8, 1, s1, 0, 0.1, 0); };
    const auto i = prey_solo_criterion(with(0.02, 0.3));
    CHECK(i.regime == PreySoloCase::ExtinctionExponential);
    CHECK(i.value == doctest::Approx(-0.025).epsilon(1e-12));
    const auto ii = prey_solo_criterion(with(0.02, 0.2));
    CHECK(ii.regime == PreySoloCase::ExtinctionMean);
    CHECK(std::abs(ii.value) <= kCriticalityTolerance);
    const auto iii = prey_solo_criterion(with(1.0, 0.1));
    CHECK(iii.regime == PreySoloCase::LogGrowth);
    CHECK(iii.value == doctest::Approx(0.995));
}
