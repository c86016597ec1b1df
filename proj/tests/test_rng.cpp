#include <doctest.h>

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <cstdint>

#include "rdpp/errors.hpp"
#include "rdpp/rng.hpp"

using namespace rdpp;

TEST_CASE("philox4x32-10 known-answer vectors") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("open unit mapping stays inside (0, 1)") {
    CHECK(to_open_unit(0) > 0.0);
    CHECK(to_open_unit(~std::uint64_t{0}) < 1.0);
    CHECK(to_open_unit(std::uint64_t{1} << 63) == doctest::Approx(0.5));
}

TEST_CASE("normal quantile agrees with an independent implementation") {
    const boost::math::normal_distribution<double> n;
    double worst = 0.0;
    for (int i = 1; i < 20000; ++i) {
        const double p = i / 20000.0;
        const double ref = boost::math::quantile(n, p);
        const double err = std::abs(normal_quantile(p) - ref) / std::max(1.0, std::abs(ref));
        worst = std::max(worst, err);
    }
    for (double p : {1e-300, 1e-100, 1e-20, 1e-10, 1e-5, 1.0 - 1e-10, 1.0 - 1e-16}) {
        const double ref = boost::math::quantile(n, p);
        worst = std::max(worst, std::abs(normal_quantile(p) - ref) / std::abs(ref));
    }
    CHECK(worst < 1e-14);
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-15));
}

TEST_CASE("normal quantile is odd") {
    for (double p : {0.01, 0.2, 0.3, 0.4999}) CHECK(normal_quantile(p) == doctest::Approx(-normal_quantile(1 - p)).epsilon(1e-14));
}

TEST_CASE("Brownian driver is a pure function of seed, path and step") {
    const BrownianDriver a(123, 7, 0.01), b(123, 7, 0.01), other_path(123, 8, 0.01), other_seed(124, 7, 0.01);
    for (std::uint64_t k : {0ULL, 1ULL, 1000ULL, 1ULL << 40}) {
        CHECK(a.standard_normal(k) == b.standard_normal(k));
        CHECK(a.standard_normal(k) != other_path.standard_normal(k));
        CHECK(a.standard_normal(k) != other_seed.standard_normal(k));
        CHECK(a.increment(k) == doctest::Approx(0.1 * a.standard_normal(k)).epsilon(1e-15));
    }
    // Query order does not matter.
    const double late = a.standard_normal(99);
    (void)a.standard_normal(5);
    CHECK(a.standard_normal(99) == late);
}

TEST_CASE("Brownian driver variates are standard normal") {
    const BrownianDriver d(2024, 0, 1.0);
    const int n = 200000;
    double sum = 0, sum2 = 0, sum4 = 0;
    int below = 0;
    for (int k = 0; k < n; ++k) {
        const double z = d.standard_normal(static_cast<std::uint64_t>(k));
        sum += z;
        sum2 += z * z;
        sum4 += z * z * z * z;
        below += z < -1.959963984540054;
    }
    CHECK(std::abs(sum / n) < 5.0 / std::sqrt(n));
    CHECK(std::abs(sum2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(sum4 / n - 3.0) < 5.0 * std::sqrt(96.0 / n));
    const double frac = static_cast<double>(below) / n;
    CHECK(std::abs(frac - 0.025) < 5.0 * std::sqrt(0.025 * 0.975 / n));
}

TEST_CASE("Brownian driver rejects bad inputs") {
    CHECK_THROWS_AS(BrownianDriver(0, 0, 0.0), Error);
    CHECK_THROWS_AS(BrownianDriver(0, std::uint64_t{1} << 32, 0.1), Error);
}
