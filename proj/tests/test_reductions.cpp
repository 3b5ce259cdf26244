#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "rslax/lax.hpp"
#include "rslax/linalg.hpp"
#include "rslax/reductions.hpp"
#include "rslax/sampling.hpp"

using namespace rslax;

namespace {

std::vector<Complex> thetas(Rng& rng, std::size_t n)
{
    std::vector<Complex> th(n);
    for (std::size_t i = 0; i < n; ++i) th[i] = Complex(0.6 * double(i) + rng.uniform(-0.15, 0.15), rng.uniform(-0.4, 0.4));
    return th;
}

std::vector<Complex> free_diag(Rng& rng, std::size_t n)
{
    std::vector<Complex> d(n);
    for (auto& x : d) x = Complex(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5));
    return d;
}

OrbitSpec rs_orbit(Rng& rng, const std::vector<Complex>& th)
{
    OrbitSpec o;
    o.u.resize(Eigen::Index(th.size()));
    for (Eigen::Index i = 0; i < o.u.size(); ++i) o.u(i) = rng.complex_normal(0.5);
    o.t = Complex(rng.uniform(0.5, 0.8), rng.uniform(-0.3, 0.3));
    o.v = trig_rs_consistent_v(th, o.u, o.t);
    return o;
}

double frob(const oracle::Mat& M) { return M.norm() / double(M.rows()); }

} // namespace

TEST_CASE("rational CM: [X, Y] = O and Y is the CM Lax matrix")
{
    Rng rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 1 + std::size_t(trial % 6);
        auto cm = random_cm_config(rng, n, Lattice::rational());
        OrbitSpec o;
        o.g = cm.g;
        const auto pair = solve_rational_cm(cm.q, cm.p, o);
        const oracle::Mat C = pair.X * pair.Y - pair.Y * pair.X;
        CHECK(frob(C - o.O(Eigen::Index(n))) < 1e-10);
        CHECK(moment_residual(pair, o.O(Eigen::Index(n))) < 1e-10);
        CHECK((pair.Y - cm_lax(cm, std::nullopt).entries).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("rational RS: X Y X^-1 - Y = O")
{
    Rng rng(52);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 4);
        OrbitSpec o;
        o.g = Complex(rng.uniform(0.5, 1.5), 0.2);
        const auto pair = solve_rational_rs(thetas(rng, n), o, free_diag(rng, n));
        const oracle::Mat M = pair.X * pair.Y * oracle::inverse(pair.X) - pair.Y;
        CHECK(frob(M - o.O(Eigen::Index(n))) < 1e-10);
    }
}

TEST_CASE("trigonometric CM lands on the orbit of O")
{
    Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 4);
        OrbitSpec o;
        o.g = Complex(rng.uniform(0.5, 1.5), 0.1);
        const auto q = random_cm_config(rng, n, Lattice::rational()).q;
        const auto sol = solve_trig_cm(q, o, free_diag(rng, n));
        CHECK(moment_residual(sol.pair, sol.moment) < 1e-10);
        CHECK(orbit_O_distance(sol.moment, o.g) < 1e-10);
        // O + g I has rank one, so its spectrum is {n g, 0, ..., 0} shifted by -g
        auto ev = sorted_values(eigenvalues(sol.moment));
        std::vector<Complex> expect(n, -o.g);
        expect[0] = (double(n) - 1.0) * o.g;
        CHECK(multiset_distance(ev, sorted_values(expect)) < 1e-8);
    }
}

TEST_CASE("trigonometric CM without a solution")
{
    OrbitSpec o;
    try {
        solve_trig_cm({0.0, 1.0}, o, {1.0, 1.0});
        FAIL("expected NoSolution");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoSolution);
    }
}

TEST_CASE("trigonometric RS: X Y X^-1 Y^-1 = t I + u v^T")
{
    Rng rng(54);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 4);
        const auto th = thetas(rng, n);
        const auto o = rs_orbit(rng, th);
        const auto pair = solve_trig_rs(th, o, free_diag(rng, n));
        const oracle::Mat M = pair.X * pair.Y * oracle::inverse(pair.X) * oracle::inverse(pair.Y);
        CHECK(frob(M - o.O_prime()) < 1e-10);
        const Complex vu = (o.v.array() * o.u.array()).sum();
        const Complex det = std::pow(o.t, double(n - 1)) * (o.t + vu);
        CHECK(oracle::rel(oracle::determinant(M), det) < 1e-10);
        CHECK(oracle::rel(o.det_O_prime(), oracle::determinant(o.O_prime())) < 1e-12);
    }
}

TEST_CASE("trigonometric RS with O' = I")
{
    OrbitSpec o;
    o.u = CVector::Zero(3);
    o.v = CVector::Zero(3);
    const auto pair = solve_trig_rs({0.0, 0.5, Complex(1.0, 0.2)}, o, {1.0, 2.0, 3.0});
    CHECK(moment_residual(pair, CMatrix::Identity(3, 3)) < 1e-14);
    CHECK(oracle::rel(oracle::determinant(moment_map(pair)), 1.0) < 1e-14);

    OrbitSpec one;
    one.u = CVector::Ones(2);
    one.v = CVector::Ones(2);
    CHECK_THROWS_AS(solve_trig_rs({0.0, 0.5}, one, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(trig_rs_consistent_v({0.0, 0.5}, one.u, 1.0), Error);
}

TEST_CASE("duality is an involution on positions")
{
    Rng rng(55);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 4);
        OrbitSpec o;
        const auto cm = random_cm_config(rng, n, Lattice::rational());
        const auto th = thetas(rng, n);
        const ReductionPair pairs[] = {solve_rational_cm(cm.q, cm.p, o), solve_rational_rs(th, o, free_diag(rng, n)),
                                       solve_trig_cm(cm.q, o, free_diag(rng, n)).pair,
                                       solve_trig_rs(th, rs_orbit(rng, th), free_diag(rng, n))};
        for (const auto& pair : pairs) {
            const auto dual = dualize(pair);
            CHECK(multiset_distance(positions(pair), positions(dualize(dual))) < 1e-8);
            CHECK(dualize(dual).kind == pair.kind);
        }
    }
}

TEST_CASE("rational CM duality swaps positions with the spectrum of Y")
{
    Rng rng(56);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 4);
        OrbitSpec o;
        const auto cm = random_cm_config(rng, n, Lattice::rational());
        const auto pair = solve_rational_cm(cm.q, cm.p, o);
        const auto dual = dualize(pair);
        CHECK(dual.kind == ReductionKind::RationalCM);
        CHECK(moment_residual(dual, o.O(Eigen::Index(n))) < 1e-10);
        CHECK(multiset_distance(sorted_values(eigenvalues(pair.Y)), sorted_values(positions(dual))) < 1e-9);
        // the dual Y is a CM Lax matrix again: off-diagonal g/(x_i - x_j)
        const auto x = positions(dual);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    CHECK(oracle::rel(dual.Y(Eigen::Index(i), Eigen::Index(j)), o.g / (x[i] - x[j])) < 1e-8);
    }
}

TEST_CASE("rational RS and trigonometric CM are dual")
{
    Rng rng(57);
    OrbitSpec o;
    const auto pair = solve_rational_rs(thetas(rng, 3), o, free_diag(rng, 3));
    const auto dual = dualize(pair);
    CHECK(dual.kind == ReductionKind::TrigCM);
    CHECK(orbit_O_distance(moment_map(dual), o.g) < 1e-10);
}

TEST_CASE("orbit distance and degenerate inputs")
{
    OrbitSpec o;
    o.g = 2.0;
    CHECK(orbit_O_distance(o.O(3), 2.0) < 1e-14);
    CHECK(orbit_O_distance(CMatrix::Identity(3, 3), 2.0) > 0.5);
    CHECK_THROWS_AS(solve_rational_cm({0.1, 0.1}, {0.0, 0.0}, o), Error);
    CHECK_THROWS_AS(solve_rational_cm({0.1, 0.2}, {0.0}, o), Error);
    CHECK_THROWS_AS(solve_rational_rs({0.1, 0.1}, o, {1.0, 1.0}), Error);
}
