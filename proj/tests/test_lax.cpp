#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "rslax/lax.hpp"
#include "rslax/limits.hpp"
#include "rslax/linalg.hpp"
#include "rslax/sampling.hpp"

using namespace rslax;

namespace {

Complex mean_of(const std::vector<Complex>& v)
{
    Complex s = 0.0;
    for (Complex x : v) s += x;
    return s / double(v.size());
}

// written out entry by entry from sigma
oracle::Mat hasegawa_oracle(const RSConfig& c, Complex z)
{
    const auto n = Eigen::Index(c.n());
    oracle::Mat L(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index kp = 0; kp < n; ++kp) {
            const auto K = std::size_t(k), KP = std::size_t(kp);
            Complex v = sigma(z + c.hbar + c.q[K] - c.q[KP], c.lat) / sigma(z, c.lat) * std::exp(c.P[K]);
            for (std::size_t l = 0; l < c.n(); ++l) {
                if (l == K) continue;
                v *= sigma(c.hbar + c.q[l] - c.q[KP], c.lat) / sigma(c.q[l] - c.q[K], c.lat);
            }
            L(k, kp) = v;
        }
    return L;
}

double spectrum_distance(const CMatrix& A, const CMatrix& B)
{
    const auto a = sorted_values(eigenvalues(A));
    const auto b = sorted_values(eigenvalues(B));
    double scale = 1.0;
    for (Complex x : b) scale = std::max(scale, std::abs(x));
    return multiset_distance(a, b) / scale;
}

} // namespace

TEST_CASE("intertwining vector is the theta series it names")
{
    const Lattice lat = Lattice::elliptic(Complex(0.2, 0.9), Complex(1.1, 0.1));
    const std::vector<Complex> lam{Complex(0.1, 0.02), Complex(0.45, -0.05), Complex(0.8, 0.1)};
    const double n = 3.0;
    const Complex z(0.33, 0.12);
    for (int j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
            const Complex arg = (z - n * (lam[k] - mean_of(lam))) / lat.omega1;
            const Complex ref = oracle::theta_partial(0.5 - j / n, 0.5, arg, n * lat.tau);
            CHECK(oracle::rel(intertwining_vector(lam, j, k, z, lat), ref) < 1e-12);
        }
}

TEST_CASE("intertwining vectors are sigma functions of the n tau lattice up to a trivial theta")
{
    Rng rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 3);
        const Lattice lat = Lattice::elliptic(Complex(rng.uniform(-0.3, 0.3), rng.uniform(0.8, 1.2)));
        const Lattice big = Lattice::elliptic(double(n) * lat.tau);
        const auto lam = random_positions(rng, n, lat);
        const double nd = double(n);
        for (int j = 0; j < int(n); ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Complex shift = nd * (lam[k] - mean_of(lam)) + double(j) * lat.tau;
                const auto g = fit_trivial_gauge([&](Complex z) { return intertwining_vector(lam, j, k, z, lat); },
                                                 [&](Complex z) { return sigma(z - shift, big); },
                                                 shift + 0.5 + 0.5 * big.tau);
                CHECK(g.residual < 1e-10);
            }
    }
}

TEST_CASE("hasegawa_lax matches the entrywise formula")
{
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const Lattice lat = trial % 2 ? random_lattice(rng) : Lattice::trigonometric();
        const auto conf = random_rs_config(rng, 2 + std::size_t(trial % 3), lat);
        const Complex z = random_spectral_point(rng, lat);
        CHECK(oracle::max_rel(hasegawa_lax(conf, z).entries, hasegawa_oracle(conf, z)) < 1e-13);
    }
}

TEST_CASE("one particle: L = sigma(z + hbar)/sigma(z) e^P")
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    const auto conf = RSConfig::make({Complex(0.2, 0.1)}, {Complex(0.3, -0.1)}, Complex(0.12, 0.03), lat);
    const Complex z(0.31, 0.22);
    const Complex expect = sigma(z + conf.hbar, lat) / sigma(z, lat) * std::exp(conf.P[0]);
    CHECK(oracle::rel(hasegawa_lax(conf, z).entries(0, 0), expect) < 1e-14);
    CHECK(oracle::rel(composition_lax(conf, z).entries(0, 0), expect) < 1e-10);
}

TEST_CASE("geometric Lax matrix equals the composition of intertwiners")
{
    Rng rng(33);
    double worst = 0.0;
    for (Complex tau : {Complex(0.0, 1.0), Complex(0.3, 0.8)}) {
        const Lattice lat = Lattice::elliptic(tau);
        for (int trial = 0; trial < 50; ++trial) {
            const auto conf = random_rs_config(rng, 2 + std::size_t(trial % 3), lat);
            const Complex z = random_spectral_point(rng, lat);
            worst = std::max(worst, oracle::max_rel(composition_lax(conf, z).entries, hasegawa_oracle(conf, z)));
        }
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("composition_lax is diag(e^P) Xi^-1(z + q_inf) Xi(z + q_inf + n hbar)")
{
    Rng rng(34);
    const Lattice lat = random_lattice(rng);
    const auto conf = random_rs_config(rng, 3, lat);
    const Complex z = random_spectral_point(rng, lat);
    const CMatrix A = xi_sigma_matrix(conf, z + conf.q_inf).entries;
    const CMatrix B = xi_sigma_matrix(conf, z + conf.q_inf + 3.0 * conf.hbar).entries;
    CVector e(3);
    for (Eigen::Index i = 0; i < 3; ++i) e(i) = std::exp(conf.P[std::size_t(i)]);
    const oracle::Mat expect = e.asDiagonal() * (oracle::inverse(A) * B);
    CHECK(oracle::max_rel(composition_lax(conf, z).entries, expect) < 1e-10);
}

TEST_CASE("hbar = 0 collapses to diag(e^P)")
{
    Rng rng(35);
    for (int trial = 0; trial < 6; ++trial) {
        const Lattice lat = trial % 2 ? random_lattice(rng) : Lattice::rational();
        auto conf = random_rs_config(rng, 3, lat);
        conf = RSConfig::make(conf.q, conf.P, 0.0, lat, conf.q_inf);
        const CMatrix L = hasegawa_lax(conf, random_spectral_point(rng, lat)).entries;
        for (Eigen::Index i = 0; i < 3; ++i)
            for (Eigen::Index j = 0; j < 3; ++j) {
                if (i == j)
                    CHECK(std::abs(L(i, i) - std::exp(conf.P[std::size_t(i)])) < 1e-12);
                else
                    CHECK(std::abs(L(i, j)) < 1e-12);
            }
    }
}

TEST_CASE("spin Lax matrix: unit framing and bilinearity")
{
    Rng rng(36);
    const Lattice lat = random_lattice(rng);
    const auto conf = random_rs_config(rng, 3, lat);
    const Complex z = random_spectral_point(rng, lat);
    RSConfig spinless = conf;
    for (auto& p : spinless.P) p = 0.0;
    const CMatrix unit = spin_lax(conf, SpinFraming::unit(3), z).entries;
    CHECK((unit - hasegawa_lax(spinless, z).entries).cwiseAbs().maxCoeff() == 0.0);

    auto rnd = [&](Eigen::Index r, Eigen::Index c) {
        CMatrix M(r, c);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < c; ++j) M(i, j) = rng.complex_normal();
        return M;
    };
    SpinFraming A{rnd(3, 2), rnd(2, 3), rnd(3, 2), rnd(2, 3)};
    SpinFraming B = A, C = A;
    B.V0 = rnd(2, 3);
    const Complex a(0.7, -0.2), b(-0.3, 1.1);
    C.V0 = a * A.V0 + b * B.V0;
    const CMatrix lin = a * spin_lax(conf, A, z).entries + b * spin_lax(conf, B, z).entries;
    CHECK(oracle::max_rel(spin_lax(conf, C, z).entries, lin) < 1e-12);
    // entries are the spinless ones times (U0 V0)_{ab} (Uinf Vinf)_{ba}
    const CMatrix f = A.coupling();
    const CMatrix S = spin_lax(conf, A, z).entries;
    CHECK(std::abs(S(0, 2) - hasegawa_lax(spinless, z).entries(0, 2) * (A.U0 * A.V0)(0, 2) * (A.Uinf * A.Vinf)(2, 0)) <
          1e-12 * std::abs(S(0, 2)));
    CHECK(f.rows() == 3);
    SpinFraming bad = A;
    bad.V0 = rnd(2, 2);
    CHECK_THROWS_AS(spin_lax(conf, bad, z), Error);
}

TEST_CASE("Ruijsenaars L' has the spectrum of the geometric Lax matrix after the theta redefinition")
{
    Rng rng(37);
    for (int trial = 0; trial < 8; ++trial) {
        const Lattice lat = trial % 2 ? random_lattice(rng) : Lattice::elliptic(Complex(0.0, 1.0));
        const auto conf = random_rs_config(rng, 2 + std::size_t(trial % 3), lat);
        const Complex z = random_spectral_point(rng, lat);
        const Complex lambda = z + conf.mu;
        for (auto norm : {RootNormalization::Principal, RootNormalization::Absorbed}) {
            const auto Lp = ruijsenaars_lax(conf, {}, lambda, norm);
            RSConfig h = conf;
            h.P = ruijsenaars_to_hasegawa_rapidities(conf, norm);
            const CMatrix G = hasegawa_oracle(h, z) / (sigma(z + conf.mu, lat) / sigma(z, lat));
            CHECK(spectrum_distance(Lp.L.entries, G) < 1e-8);
            // symmetric functions agree as well
            const auto pa = oracle::power_sums(Lp.L.entries);
            const auto pb = oracle::power_sums(G);
            for (std::size_t k = 0; k < pa.size(); ++k) CHECK(oracle::rel(pa[k], pb[k]) < 1e-8);
        }
    }
}

TEST_CASE("Ruijsenaars L' entries")
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    const auto conf = RSConfig::make({Complex(0.1, 0.0), Complex(0.55, 0.1)}, {0.2, -0.1}, Complex(0.15, 0.05), lat);
    const Complex lambda(0.4, 0.3);
    const Complex mu = conf.mu;
    const CMatrix L = ruijsenaars_lax(conf, {}, lambda).L.entries;
    auto f = [&](Complex q) { return std::sqrt(sigma(mu, lat) * sigma(mu, lat) * (wp(mu, lat) - wp(q, lat))); };
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const std::size_t l = 1 - i;
            const Complex x = conf.q[i] - conf.q[j];
            const Complex expect = std::exp(conf.P[i]) * f(conf.q[i] - conf.q[l]) * sigma(x + lambda, lat) *
                                   sigma(mu, lat) / (sigma(lambda, lat) * sigma(x + mu, lat));
            CHECK(oracle::rel(L(Eigen::Index(i), Eigen::Index(j)), expect) < 1e-12);
        }
    const auto one = RSConfig::make({Complex(0.3, 0.1)}, {Complex(0.4, 0.2)}, Complex(0.15, 0.05), lat);
    CHECK(oracle::rel(ruijsenaars_lax(one, {}, lambda).L.entries(0, 0), std::exp(Complex(0.4, 0.2))) < 1e-14);
    CHECK_THROWS_AS(ruijsenaars_lax(RSConfig::make(conf.q, conf.P, 0.0, lat), {}, lambda), Error);
}

TEST_CASE("Krichever Lax matrix")
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    const auto conf = RSConfig::make({Complex(0.1, 0.0), Complex(0.55, 0.1)}, {0.0, 0.0}, Complex(0.15, 0.05), lat);
    const Complex z(0.3, 0.25), lambda(0.4, 0.2);
    const CMatrix K = krichever_lax(conf, z, lambda).entries;
    const Complex mu = conf.mu;
    const Complex x = conf.q[0] - conf.q[1];
    const Complex power = std::pow(sigma(z - mu, lat) / sigma(z + mu, lat), (x - mu) / (2.0 * mu));
    CHECK(oracle::rel(K(0, 1), sigma(lambda + x, lat) / (sigma(lambda + mu, lat) * sigma(x - mu, lat)) * power) < 1e-12);
    CHECK_THROWS_AS(krichever_lax(RSConfig::make(conf.q, conf.P, 0.0, lat), z, lambda), Error);
}

TEST_CASE("Calogero-Moser Lax matrices")
{
    CMConfig cm{{0.0, Complex(1.2, 0.1), Complex(2.1, -0.2)}, {0.3, -0.2, Complex(0.1, 0.2)}, Complex(0.8, 0.1),
                Lattice::rational()};
    const CMatrix L = cm_lax(cm, std::nullopt).entries;
    CHECK(L(0, 1) == cm.g / (cm.q[0] - cm.q[1]));
    CHECK(L(2, 2) == cm.p[2]);
    // 1/2 Tr L^2 is the Hamiltonian with coupling i g
    Complex pot = 0.0, kin = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        kin += 0.5 * cm.p[i] * cm.p[i];
        for (std::size_t j = i + 1; j < 3; ++j) pot += 1.0 / ((cm.q[i] - cm.q[j]) * (cm.q[i] - cm.q[j]));
    }
    CHECK(oracle::rel(0.5 * (L * L).trace(), kin - cm.g * cm.g * pot) < 1e-13);
    CHECK(oracle::rel(cm_hamiltonian(cm), kin + cm.g * cm.g * pot) < 1e-13);

    const Complex lambda(3.0, 1.0);
    const CMatrix Ll = cm_lax(cm, lambda).entries;
    CHECK(oracle::rel(Ll(1, 0), cm.g * (1.0 / (cm.q[1] - cm.q[0]) - 1.0 / lambda)) < 1e-14);
    CHECK_THROWS_AS(cm_lax(cm, Complex(0.0)), Error);

    CMConfig ell = cm;
    ell.lat = Lattice::elliptic(Complex(0.0, 1.0));
    ell.q = {0.1, Complex(0.4, 0.1), Complex(0.7, -0.1)};
    const CMatrix E = cm_lax(ell, Complex(0.3, 0.2)).entries;
    const Complex x = ell.q[0] - ell.q[2];
    const Complex lam(0.3, 0.2);
    CHECK(oracle::rel(E(0, 2), ell.g * sigma(x - lam, ell.lat) / (sigma(x, ell.lat) * sigma(-lam, ell.lat))) < 1e-13);
    CHECK_THROWS_AS(cm_lax(ell, std::nullopt), Error);
}

TEST_CASE("factorized CM for one particle is the zeta function")
{
    const Lattice lat = Lattice::elliptic(Complex(0.1, 1.1));
    CMConfig cm{{Complex(0.2, 0.1)}, {0.0}, 1.0, lat};
    const Complex z(0.31, 0.27);
    const double h = 1e-2;
    auto lg = [&](Complex x) { return std::log(oracle::sigma_extrapolated(x, lat.omega1, lat.omega2)); };
    const Complex ls = (8.0 * (lg(z + h) - lg(z - h)) - (lg(z + 2.0 * h) - lg(z - 2.0 * h))) / (12.0 * h);
    CHECK(std::abs(factorized_cm_lax(cm, z).entries(0, 0) - ls) < 1e-6);
}

TEST_CASE("framing constraint")
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    auto conf = RSConfig::make({0.1, Complex(0.4, 0.1)}, {0.0, 0.0}, Complex(0.1, 0.02), lat, Complex(0.2, -0.1));
    CHECK(framing_constraint_check(conf) < 1e-10);
    auto moved = conf;
    moved.q_zero += 0.1;
    CHECK(framing_constraint_check(moved) == doctest::Approx(0.1).epsilon(1e-9));
    moved.q_zero = conf.q_zero + lat.omega2;
    CHECK(framing_constraint_check(moved) < 1e-10);
    const auto four = RSConfig::make({0.1, Complex(0.3, 0.1), 0.5, Complex(0.7, -0.1)}, {0.0, 0.0, 0.0, 0.0}, conf.hbar,
                                     lat, conf.q_inf);
    CHECK(std::abs((four.q_zero - four.q_inf) - 2.0 * (conf.q_zero - conf.q_inf)) < 1e-15);
}

TEST_CASE("invalid configurations")
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    CHECK_THROWS_AS(hasegawa_lax(RSConfig::make({0.1, 0.1 + 1e-9}, {0.0, 0.0}, 0.1, lat), Complex(0.3, 0.2)), Error);
    CHECK_THROWS_AS(hasegawa_lax(RSConfig::make({0.1, 0.5}, {0.0}, 0.1, lat), Complex(0.3, 0.2)), Error);
    CHECK_THROWS_AS(hasegawa_lax(RSConfig::make({0.1, 0.5}, {0.0, 0.0}, 0.1, lat), lat.omega1), Error);
    CHECK_THROWS_AS(composition_lax(RSConfig::make({0.1, 0.5}, {0.0, 0.0}, 0.1, Lattice::rational()), 0.3), Error);
}
