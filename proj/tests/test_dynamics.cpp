#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "rslax/dynamics.hpp"
#include "rslax/linalg.hpp"
#include "rslax/sampling.hpp"

using namespace rslax;

namespace {

HamiltonianSpec trace_power(int i, Complex z)
{
    HamiltonianSpec s;
    s.i = i;
    s.eval_z = z;
    return s;
}

// eigenvalues of L up to a permutation, tracked through power sums
double power_sum_drift(const CMatrix& L0, const CMatrix& L1)
{
    const auto a = oracle::power_sums(L0);
    const auto b = oracle::power_sums(L1);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(a[k])));
    return worst;
}

} // namespace

TEST_CASE("Hamiltonian values")
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    const Complex z(0.3, 0.2);
    const auto one = RSConfig::make({Complex(0.2, 0.1)}, {Complex(0.3, 0.1)}, Complex(0.1, 0.05), lat);
    CHECK(oracle::rel(hamiltonian(trace_power(1, z), one),
                      sigma(z + one.hbar, lat) / sigma(z, lat) * std::exp(one.P[0])) < 1e-14);

    HamiltonianSpec cosh;
    cosh.family = HamiltonianFamily::RSCosh;
    cosh.eval_z = z;
    CHECK(oracle::rel(hamiltonian(cosh, one), 2.0 * std::cosh(one.P[0])) < 1e-14);

    Rng rng(41);
    const auto two = random_rs_config(rng, 2, lat);
    const CMatrix L = hasegawa_lax(two, z).entries;
    const CVector ev = eigenvalues(L);
    CHECK(oracle::rel(hamiltonian(trace_power(2, z), two), ev(0) * ev(0) + ev(1) * ev(1)) < 1e-10);

    HamiltonianSpec hitchin;
    hitchin.family = HamiltonianFamily::HitchinComponent;
    hitchin.i = 2;
    hitchin.eval_z = z;
    const CMatrix C = composition_lax(two, z).entries;
    CHECK(oracle::rel(hamiltonian(hitchin, two), (C * C * C).trace() / 3.0) < 1e-12);

    CHECK_THROWS_AS(hamiltonian(trace_power(0, z), two), Error);
}

TEST_CASE("one particle moves freely")
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    const auto one = RSConfig::make({Complex(0.2, 0.1)}, {Complex(0.3, 0.1)}, Complex(0.1, 0.05), lat);
    const auto spec = trace_power(1, Complex(0.3, 0.2));
    const auto field = hamiltonian_vector_field(spec, phase_point(one), one);
    const Complex H = hamiltonian(spec, one);
    CHECK(oracle::rel(field.dq[0], H) < 1e-9);
    CHECK(std::abs(field.dp[0]) < 1e-12);

    const auto tr = integrate(spec, phase_point(one), one, 0.5, 0.01);
    REQUIRE(!tr.aborted);
    REQUIRE(tr.points.size() == 51);
    CHECK(std::abs(tr.points.back().q[0] - (one.q[0] + 0.5 * H)) < 1e-8);
    CHECK(std::abs(tr.points.back().p[0] - one.P[0]) < 1e-12);
    for (std::size_t k = 1; k < tr.times.size(); ++k) CHECK(tr.times[k] > tr.times[k - 1]);
}

TEST_CASE("Wirtinger check reports holomorphy")
{
    Rng rng(42);
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    const auto conf = random_rs_config(rng, 2, lat);
    FdOptions fd;
    fd.wirtinger = true;
    const auto g = hamiltonian_gradient(trace_power(2, Complex(0.3, 0.2)), phase_point(conf), conf, fd);
    CHECK(g.cr_defect < 1e-6);
}

TEST_CASE("Richardson ratio of the central differences")
{
    Rng rng(43);
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    for (int trial = 0; trial < 3; ++trial) {
        const auto conf = random_rs_config(rng, 2, lat);
        CHECK(std::abs(richardson_ratio(trace_power(2, random_spectral_point(rng, lat)), phase_point(conf), conf, 0.02) -
                       4.0) < 0.2);
    }
}

TEST_CASE("flows are isospectral and conserve energy")
{
    Rng rng(44);
    for (const Lattice& lat : {Lattice::elliptic(Complex(0.0, 1.0)), Lattice::trigonometric()})
        for (std::size_t n : {2, 3}) {
            const auto conf = random_flow_config(rng, n, lat);
            const auto spec = trace_power(2, random_spectral_point(rng, lat));
            const auto tr = integrate(spec, phase_point(conf), conf, 0.3, 1e-3);
            REQUIRE(!tr.aborted);
            CHECK(tr.max_spectral_drift() < 1e-6);
            CHECK(tr.max_energy_drift() < 1e-8);
            // the Lax matrix at a second spectral point is conserved too
            HamiltonianSpec other = spec;
            other.eval_z = random_spectral_point(rng, lat);
            const CMatrix L0 = hasegawa_lax(conf, other.eval_z).entries;
            const CMatrix L1 = hasegawa_lax(with_point(conf, tr.points.back()), other.eval_z).entries;
            CHECK(power_sum_drift(L0, L1) < 1e-7);
        }
}

TEST_CASE("Poisson brackets")
{
    Rng rng(45);
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    for (int trial = 0; trial < 5; ++trial) {
        const auto conf = random_flow_config(rng, 3, lat);
        const Complex z = random_spectral_point(rng, lat);
        const auto point = phase_point(conf);
        CHECK(std::abs(poisson_bracket(trace_power(2, z), trace_power(2, z), point, conf)) < 1e-12);
        for (int a = 1; a <= 3; ++a)
            for (int b = a + 1; b <= 3; ++b)
                CHECK(std::abs(poisson_bracket(trace_power(a, z), trace_power(b, z), point, conf)) < 1e-6);
        // Hamiltonians at different spectral points commute as well
        const Complex z2 = random_spectral_point(rng, lat);
        CHECK(std::abs(poisson_bracket(trace_power(1, z), trace_power(2, z2), point, conf)) < 1e-6);
    }
}

TEST_CASE("canonical and theta coordinates give the same flow")
{
    Rng rng(46);
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    const auto conf = random_flow_config(rng, 2, lat);
    const auto spec = trace_power(2, random_spectral_point(rng, lat));
    const auto a = integrate(spec, phase_point(conf), conf, 0.2, 1e-3);
    const auto b = integrate_theta_coordinates(spec, phase_point(conf), conf, 0.2, 1e-3);
    REQUIRE(a.points.size() == b.points.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.points.size(); ++k)
        for (std::size_t i = 0; i < 2; ++i)
            worst = std::max({worst, std::abs(a.points[k].q[i] - b.points[k].q[i]),
                              std::abs(std::exp(a.points[k].p[i]) - std::exp(b.points[k].p[i]))});
    CHECK(worst < 1e-8);
}

TEST_CASE("near collisions abort with a partial trajectory")
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    const auto conf = RSConfig::make({0.2, 0.2 + 5e-5}, {0.0, 0.0}, 0.1, lat);
    CHECK_THROWS_AS(hamiltonian_vector_field(trace_power(1, Complex(0.3, 0.2)), phase_point(conf), conf), Error);
    const auto tr = integrate(trace_power(1, Complex(0.3, 0.2)), phase_point(conf), conf, 1.0, 1e-2);
    CHECK(tr.aborted);
    CHECK(!tr.points.empty());
    CHECK(tr.abort_reason.find("CollisionImminent") != std::string::npos);
}

TEST_CASE("integrate validates its step")
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    const auto conf = RSConfig::make({0.2, 0.6}, {0.0, 0.0}, 0.1, lat);
    CHECK_THROWS_AS(integrate(trace_power(1, Complex(0.3, 0.2)), phase_point(conf), conf, 1.0, 0.0), Error);
    CHECK_THROWS_AS(integrate(trace_power(1, Complex(0.3, 0.2)), phase_point(conf), conf, -1.0, 0.1), Error);
}
