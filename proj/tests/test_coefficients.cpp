#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rdpp/coefficients.hpp"

using namespace rdpp;

TEST_CASE("constant coefficient") {
    const auto f = CoefficientFn::constant(0.7);
    CHECK(f(0.0) == 0.7);
    CHECK(f(123.0) == 0.7);
    CHECK(f.declared_inf() == 0.7);
    CHECK(f.declared_sup() == 0.7);
    CHECK_FALSE(f.identically_zero());
    CHECK(CoefficientFn::constant(0.0).identically_zero());
}

TEST_CASE("piecewise constant is right-continuous") {
    const auto f = CoefficientFn::piecewise({1.0, 2.0}, {0.5, 1.5, 0.25});
    CHECK(f(0.0) == 0.5);
    CHECK(f(0.999) == 0.5);
    CHECK(f(1.0) == 1.5);
    CHECK(f(2.0) == 0.25);
    CHECK(f(1e6) == 0.25);
    CHECK(f.declared_inf() == 0.25);
    CHECK(f.declared_sup() == 1.5);
    CHECK(f.structural_problem().empty());
}

TEST_CASE("malformed piecewise reports a structural problem") {
    CHECK_FALSE(CoefficientFn::piecewise({2.0, 1.0}, {1.0, 2.0, 3.0}).structural_problem().empty());
    CHECK_FALSE(CoefficientFn::piecewise({1.0}, {1.0}).structural_problem().empty());
}

TEST_CASE("sinusoid bounds are exact") {
    const auto f = CoefficientFn::sinusoidal(1.0, 0.3, 2.0, 0.0);
    CHECK(f.declared_inf() == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(f.declared_sup() == doctest::Approx(1.3).epsilon(1e-15));
    CHECK(f(0.5) == doctest::Approx(1.3).epsilon(1e-14));
    CHECK(f(1.5) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(CoefficientFn::sinusoidal(2.0, 0.0, 1.0).is_constant());
}

TEST_CASE("sinusoid critical times hit the extrema") {
    const auto f = CoefficientFn::sinusoidal(0.0, 1.0, 4.0, 0.3);
    for (double t : f.critical_times(20.0)) CHECK(std::abs(std::abs(f(t)) - 1.0) < 1e-12);
}

TEST_CASE("time grid covers breakpoints and periods") {
    const auto a = CoefficientFn::piecewise({3.0}, {1.0, 2.0});
    const auto b = CoefficientFn::sinusoidal(1.0, 0.5, 2.0);
    const CoefficientFn* fns[] = {&a, &b};
    double spacing = 0.0;
    const auto grid = time_grid(fns, 100, &spacing);
    CHECK(spacing == doctest::Approx(0.02));
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() >= 5.0 - 1e-12);
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    CHECK(std::find(grid.begin(), grid.end(), 3.0) != grid.end());

    const auto c = CoefficientFn::constant(1.0);
    const CoefficientFn* only[] = {&c};
    CHECK(time_grid(only, 100) == std::vector<double>{0.0});
}

TEST_CASE("coefficient set indexing follows names") {
    const auto c = CoefficientSet::constants(1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11);
    for (std::size_t i = 0; i < CoefficientSet::names.size(); ++i) CHECK(c[i](0.0) == static_cast<double>(i + 1));
    const auto v = c.at(0.0);
    CHECK(v.e == 7.0);
    CHECK(v.rho2 == 11.0);
    CHECK(c.all_constant());
}
