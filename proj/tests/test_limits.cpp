#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "rslax/limits.hpp"
#include "rslax/sampling.hpp"

using namespace rslax;

TEST_CASE("log-log slope of a power law")
{
    const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> e;
    for (double x : h) e.push_back(3.0 * x * x);
    CHECK(std::abs(log_log_slope(h, e) - 2.0) < 1e-12);
    e[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK(std::abs(log_log_slope(h, e) - 2.0) < 1e-12);
    CHECK(std::isnan(log_log_slope({0.1}, {0.2})));
    CHECK(std::isnan(log_log_slope({0.1, 0.2}, {0.0, 0.2})));
}

TEST_CASE("monotone with a floor")
{
    CHECK(monotone_decreasing({1.0, 0.5, 0.1}, 0.0));
    CHECK(!monotone_decreasing({1.0, 0.5, 0.7}, 0.0));
    CHECK(monotone_decreasing({1e-15, 3e-15, 2e-15}, 1e-14));
    CHECK(!monotone_decreasing({1.0, std::numeric_limits<double>::quiet_NaN()}, 0.0));
}

TEST_CASE("elliptic to trigonometric degeneration")
{
    Rng rng(61);
    const Complex z(0.3, 0.2);
    for (int trial = 0; trial < 3; ++trial) {
        const std::size_t n = 2 + std::size_t(trial);
        const auto conf = random_rs_config(rng, n, Lattice::elliptic(Complex(0.0, 1.0)));
        const auto sweep = degeneration_sweep(conf, {2.0, 5.0, 10.0, 20.0}, z);
        REQUIRE(sweep.errors.size() == 4);
        CHECK(std::isnan(sweep.errors[0]));
        CHECK(sweep.failures.size() == 1);
        const std::vector<double> tail(sweep.errors.begin() + 1, sweep.errors.end());
        CHECK(monotone_decreasing(tail, 64.0 * std::numeric_limits<double>::epsilon()));
        CHECK(sweep.errors.back() < 1e-8);
        CHECK(sweep.parameter == SweepParameter::ImTau);
    }
}

TEST_CASE("trigonometric lattice compares with itself")
{
    Rng rng(62);
    const auto conf = random_rs_config(rng, 3, Lattice::trigonometric());
    CHECK(degeneration_residual(conf, Complex(0.3, 0.2)) == 0.0);
    CHECK_THROWS_AS(degeneration_residual(random_rs_config(rng, 2, Lattice::rational()), 0.3), Error);
    CHECK_THROWS_AS(degeneration_sweep(conf, {5.0, 5.0}, 0.3), Error);
    CHECK_THROWS_AS(degeneration_sweep(conf, {5.0, 10.0, 7.0}, 0.3), Error);
}

TEST_CASE("Calogero-Moser limit is first order in hbar")
{
    Rng rng(63);
    for (int trial = 0; trial < 4; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 2);
        const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
        const auto rs = random_rs_config(rng, n, lat);
        auto cm = random_cm_config(rng, n, lat);
        const auto sweep = cm_limit_sweep(rs, cm, {1e-2, 5e-3, 2.5e-3}, Complex(0.3, 0.2));
        CHECK(sweep.failures.empty());
        CHECK(sweep.fitted_order > 0.85);
        CHECK(sweep.fitted_order < 1.15);
        for (std::size_t k = 1; k < sweep.errors.size(); ++k) CHECK(sweep.errors[k] < sweep.errors[k - 1]);
    }
}

TEST_CASE("Calogero-Moser limit for one particle")
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    const auto rs = RSConfig::make({Complex(0.2, 0.1)}, {0.0}, 0.1, lat);
    CMConfig cm;
    cm.q = {Complex(0.2, 0.1)};
    cm.p = {0.0};
    cm.lat = lat;
    const Complex z(0.3, 0.2);
    const double r1 = cm_limit_residual(rs, cm, 1e-4, z);
    const double r2 = cm_limit_residual(rs, cm, 5e-5, z);
    CHECK(r1 < 1e-3);
    CHECK(std::abs(r1 / r2 - 2.0) < 0.05);
    CHECK_THROWS_AS(cm_limit_residual(rs, cm, 0.0, z), Error);
    const auto single = cm_limit_sweep(rs, cm, {1e-3}, z);
    CHECK(std::isnan(single.fitted_order));
}

TEST_CASE("framing constraint")
{
    Rng rng(64);
    const Lattice lat = Lattice::elliptic(Complex(0.2, 1.1));
    auto conf = random_rs_config(rng, 3, lat);
    CHECK(framing_constraint_check(conf) < 1e-12);
    conf.q_zero += lat.omega1 + lat.omega2;
    CHECK(framing_constraint_check(conf) < 1e-12);
    conf.q_zero += 0.1;
    CHECK(std::abs(framing_constraint_check(conf) - 0.1) < 1e-12);
}
