#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rslax/harness.hpp"
#include "rslax/limits.hpp"
#include "rslax/linalg.hpp"
#include "rslax/reductions.hpp"

namespace rslax::harness {

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string describe(const char* what, std::size_t count)
{
    std::ostringstream os;
    os << count << ' ' << what;
    return os.str();
}

Complex cell_point(Rng& rng, const Lattice& lat)
{
    return lat.omega1 * (rng.uniform(0.15, 0.85) + lat.tau * rng.uniform(0.15, 0.85));
}

CauchyMatrixSpec random_cauchy_spec(Rng& rng, std::size_t n)
{
    CauchyMatrixSpec spec;
    spec.lat = random_lattice(rng);
    spec.qs = random_positions(rng, n, spec.lat);
    spec.rs = random_positions(rng, n, spec.lat);
    for (auto& r : spec.rs) r += spec.lat.omega1 * spec.lat.tau * 0.35;
    spec.q_inf = spec.lat.omega1 * Complex(rng.uniform(-0.2, 0.2), 0.0);
    return spec;
}

MatrixFunction random_theta_matrix(Rng& rng, std::size_t n, Complex tau)
{
    const auto N = Eigen::Index(n);
    std::vector<ThetaCharacteristic> ch(n * n);
    std::vector<Complex> shift(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
        ch[k] = {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
        shift[k] = Complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.2, 0.2));
    }
    return [=](Complex z) {
        CMatrix F(N, N);
        for (Eigen::Index i = 0; i < N; ++i)
            for (Eigen::Index j = 0; j < N; ++j) {
                const std::size_t k = std::size_t(i * N + j);
                F(i, j) = theta_char(ch[k], z + shift[k], tau);
            }
        return F;
    };
}

CMatrix drop(const CMatrix& M, Eigen::Index k, Eigen::Index l)
{
    const auto n = M.rows();
    CMatrix out(n - 1, n - 1);
    for (Eigen::Index i = 0, a = 0; i < n; ++i) {
        if (i == k) continue;
        for (Eigen::Index j = 0, b = 0; j < n; ++j) {
            if (j == l) continue;
            out(a, b++) = M(i, j);
        }
        ++a;
    }
    return out;
}

// ---------------------------------------------------------------- elliptic

CheckResult sigma_quasi_periodicity(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int L = 0; L < 10; ++L) {
        const Lattice lat = random_lattice(rng);
        for (int k = 0; k < 10; ++k) {
            const Complex z = cell_point(rng, lat);
            const Complex sz = sigma(z, lat);
            const Complex f1 = std::exp(2.0 * lat.eta1 * (z + lat.omega1 / 2.0));
            worst = std::max(worst, std::abs(sigma(z + lat.omega1, lat) + f1 * sz) / std::abs(f1 * sz));
            const Complex f2 = std::exp(2.0 * lat.eta2 * (z + lat.omega2 / 2.0));
            worst = std::max(worst, std::abs(sigma(z + lat.omega2, lat) + f2 * sz) / std::abs(f2 * sz));
        }
    }
    return make_check("elliptic.sigma_quasi_periodicity", worst, 1e-9, s, "10 lattices x 10 points, both periods");
}

CheckResult legendre_relation(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int L = 0; L < 10; ++L) worst = std::max(worst, random_lattice(rng).legendre_residual());
    for (Complex tau : {Complex(0.0, 1.0), Complex(0.3, 0.8), Complex(-0.45, 0.9), Complex(0.0, 20.0)})
        worst = std::max(worst, Lattice::elliptic(tau).legendre_residual());
    return make_check("elliptic.legendre_relation", worst, 1e-10, s, "half-period form");
}

CheckResult wp_second_log_derivative(Rng& rng, double s, const json&)
{
    const double h = 1e-4;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Lattice lat = (k % 10 == 0) ? Lattice::elliptic(Complex(0.0, 1.0)) : random_lattice(rng);
        const Complex z = cell_point(rng, lat);
        const Complex s0 = sigma(z, lat);
        const Complex d2 = (std::log(sigma(z + h, lat) / s0) + std::log(sigma(z - h, lat) / s0)) / (h * h);
        const Complex w = wp(z, lat);
        worst = std::max(worst, std::abs(w + d2) / std::max(1.0, std::abs(w)));
    }
    return make_check("elliptic.wp_second_log_derivative", worst, 1e-6, s, "central difference, h = 1e-4");
}

CheckResult wp_periodicity(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Lattice lat = random_lattice(rng);
        const Complex z = cell_point(rng, lat);
        const Complex w = wp(z, lat);
        worst = std::max({worst, rel(wp(z + lat.omega1, lat), w), rel(wp(z + lat.omega2, lat), w)});
    }
    return make_check("elliptic.wp_periodicity", worst, 1e-9, s);
}

CheckResult sigma_degeneration(Rng&, double s, const json&)
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 20.0));
    double residual = std::numeric_limits<double>::quiet_NaN();
    std::string detail = "tau = 20i";
    try {
        residual = fit_trivial_gauge([&](Complex x) { return sigma(x, lat); },
                                     [](Complex x) { return std::sin(pi * x); }, Complex(0.5, 0.1))
                       .residual;
    } catch (const Error& e) {
        detail = e.what();
    }
    return make_check("elliptic.sigma_degeneration", residual, 1e-8, s, detail);
}

// ---------------------------------------------------------------- cauchy

CheckResult cauchy_determinant(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + std::size_t(trial % 6);
        const auto spec = random_cauchy_spec(rng, n);
        const Complex lambda = random_spectral_point(rng, spec.lat);
        for (auto conv : {CauchyConvention::Frobenius, CauchyConvention::Displayed}) {
            const Complex direct = determinant(build_elliptic_cauchy(spec, lambda, conv).entries);
            worst = std::max(worst, rel(frobenius_determinant(spec, lambda, conv), direct));
        }
    }
    return make_check("cauchy.frobenius_determinant", worst, 1e-8, s, "200 trials, n <= 6, both conventions");
}

CheckResult cauchy_minors(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (std::size_t n = 2; n <= 5; ++n)
        for (int trial = 0; trial < 5; ++trial) {
            const auto spec = random_cauchy_spec(rng, n);
            const Complex lambda = random_spectral_point(rng, spec.lat);
            for (auto conv : {CauchyConvention::Frobenius, CauchyConvention::Displayed}) {
                const CMatrix H = build_elliptic_cauchy(spec, lambda, conv).entries;
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) {
                        const Complex direct = determinant(drop(H, Eigen::Index(k), Eigen::Index(l)));
                        worst = std::max(worst, rel(minor_determinant(spec, lambda, k, l, conv), direct));
                    }
            }
        }
    return make_check("cauchy.minor_formula", worst, 1e-8, s, "n = 2..5, all (k, l)");
}

CheckResult cauchy_cofactor_inverse(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (std::size_t n = 2; n <= 5; ++n)
        for (int trial = 0; trial < 5; ++trial) {
            const auto spec = random_cauchy_spec(rng, n);
            const Complex lambda = random_spectral_point(rng, spec.lat);
            const CMatrix H = build_elliptic_cauchy(spec, lambda).entries;
            const Complex det = frobenius_determinant(spec, lambda);
            const auto N = Eigen::Index(n);
            CMatrix cramer(N, N);
            for (Eigen::Index k = 0; k < N; ++k)
                for (Eigen::Index l = 0; l < N; ++l) {
                    const double sign = ((k + l) % 2 == 0) ? 1.0 : -1.0;
                    cramer(l, k) = sign * minor_determinant(spec, lambda, std::size_t(k), std::size_t(l)) / det;
                }
            worst = std::max(worst, relative_max_error(cramer, solve_left(H, CMatrix::Identity(N, N))));
        }
    return make_check("cauchy.cofactor_inverse", worst, 1e-8, s);
}

CheckResult cauchy_cocycle(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + std::size_t(trial % 4);
        const Complex tau(rng.uniform(-0.3, 0.3), rng.uniform(0.8, 1.4));
        const auto F = random_theta_matrix(rng, n, tau);
        const Complex z(rng.uniform(-0.5, 0.5), rng.uniform(-0.3, 0.3));
        const Complex u(rng.uniform(-0.4, 0.4), rng.uniform(-0.2, 0.2));
        const CMatrix prod =
            shifted_inverse_product(F, z, u).entries * shifted_inverse_product(F, z + u, -u).entries;
        const auto N = Eigen::Index(n);
        worst = std::max(worst, max_abs(prod - CMatrix::Identity(N, N)));
    }
    return make_check("cauchy.cocycle", worst, 1e-8, s);
}

CheckResult cauchy_matrix_product(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + std::size_t(trial % 4);
        const Complex tau(rng.uniform(-0.3, 0.3), rng.uniform(0.8, 1.4));
        const auto F = random_theta_matrix(rng, n, tau);
        const Complex z(rng.uniform(-0.5, 0.5), rng.uniform(-0.3, 0.3));
        const Complex u(rng.uniform(-0.4, 0.4), rng.uniform(-0.2, 0.2));
        const CMatrix direct = shifted_inverse_product(F, z, u).entries;
        worst = std::max(worst, max_abs(shifted_inverse_product_det_ratio(F, z, u) - direct) /
                                    std::max(1.0, max_abs(direct)));
    }
    return make_check("cauchy.matrix_product", worst, 1e-9, s, "100 theta-entry matrices, n <= 4");
}

CheckResult cauchy_rational_classical(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        CauchyMatrixSpec spec;
        spec.lat = Lattice::rational();
        spec.qs = random_positions(rng, 4, spec.lat);
        spec.rs = random_positions(rng, 4, spec.lat);
        for (auto& r : spec.rs) r += Complex(0.5, 0.7);
        const auto& x = spec.qs;
        const auto& y = spec.rs;
        Complex classical = 1.0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) classical *= (x[j] - x[i]) * (y[i] - y[j]);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) classical /= (x[j] - y[i]);
        const Complex inf(std::numeric_limits<double>::infinity(), 0.0);
        worst = std::max(worst, rel(frobenius_determinant(spec, inf), classical));
    }
    return make_check("cauchy.rational_classical", worst, 1e-10, s, "20 random 4x4 instances");
}

// ---------------------------------------------------------------- lax

CheckResult lax_geometric(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    int count = 0;
    for (Complex tau : {Complex(0.0, 1.0), Complex(0.3, 0.8)}) {
        const Lattice lat = Lattice::elliptic(tau);
        for (int trial = 0; trial < 50; ++trial, ++count) {
            const std::size_t n = 2 + std::size_t(trial % 3);
            const auto conf = random_rs_config(rng, n, lat);
            const Complex z = random_spectral_point(rng, lat);
            worst = std::max(worst, relative_max_error(composition_lax(conf, z).entries, hasegawa_lax(conf, z).entries));
        }
    }
    return make_check("lax.geometric_equality", worst, 1e-7, s, describe("configs", std::size_t(count)));
}

CheckResult lax_singular_limit(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        auto conf = random_rs_config(rng, 2 + std::size_t(trial % 3), Lattice::elliptic(Complex(0.0, 1.0)));
        conf.lat = Lattice::elliptic(Complex(0.0, 20.0));
        worst = std::max(worst, degeneration_residual(conf, random_spectral_point(rng, conf.lat)));
    }
    return make_check("lax.singular_limit", worst, 1e-6, s, "Im tau = 20");
}

CheckResult lax_hbar_zero(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
        const Lattice lat = trial % 3 == 0 ? Lattice::trigonometric() : random_lattice(rng);
        auto conf = random_rs_config(rng, 2 + std::size_t(trial % 3), lat);
        conf = RSConfig::make(conf.q, conf.P, 0.0, lat, conf.q_inf);
        const CMatrix L = hasegawa_lax(conf, random_spectral_point(rng, lat)).entries;
        for (Eigen::Index i = 0; i < L.rows(); ++i)
            for (Eigen::Index j = 0; j < L.cols(); ++j) {
                const Complex expect = i == j ? std::exp(conf.P[std::size_t(i)]) : Complex(0.0);
                worst = std::max(worst, std::abs(L(i, j) - expect) / std::max(1.0, std::abs(expect)));
            }
    }
    return make_check("lax.hbar_zero_collapse", worst, 1e-12, s);
}

CheckResult lax_spin_unit(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 9; ++trial) {
        const Lattice lat = random_lattice(rng);
        const auto conf = random_rs_config(rng, 2 + std::size_t(trial % 3), lat);
        const Complex z = random_spectral_point(rng, lat);
        RSConfig spinless = conf;
        std::fill(spinless.P.begin(), spinless.P.end(), Complex(0.0));
        const CMatrix A = spin_lax(conf, SpinFraming::unit(conf.n()), z).entries;
        worst = std::max(worst, max_abs(A - hasegawa_lax(spinless, z).entries));
    }
    // exact equality is required, the tolerance only makes the strict comparison meaningful
    return make_check("lax.spin_unit_framing", worst, 1e-300, s);
}

CheckResult lax_spin_bilinear(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    auto random_matrix = [&](Eigen::Index r, Eigen::Index c) {
        CMatrix M(r, c);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < c; ++j) M(i, j) = rng.complex_normal();
        return M;
    };
    for (int trial = 0; trial < 9; ++trial) {
        const Lattice lat = random_lattice(rng);
        const auto conf = random_rs_config(rng, 2 + std::size_t(trial % 3), lat);
        const auto N = Eigen::Index(conf.n());
        const Eigen::Index k = 1 + trial % 3;
        const Complex z = random_spectral_point(rng, lat);
        SpinFraming A{random_matrix(N, k), random_matrix(k, N), random_matrix(N, k), random_matrix(k, N)};
        const CMatrix U0b = random_matrix(N, k);
        const CMatrix Vinfb = random_matrix(k, N);
        const Complex a = rng.complex_normal(), b = rng.complex_normal();

        SpinFraming B = A, C = A;
        B.U0 = U0b;
        C.U0 = a * A.U0 + b * U0b;
        const CMatrix lin0 = a * spin_lax(conf, A, z).entries + b * spin_lax(conf, B, z).entries;
        worst = std::max(worst, relative_max_error(spin_lax(conf, C, z).entries, lin0));

        B = A;
        C = A;
        B.Vinf = Vinfb;
        C.Vinf = a * A.Vinf + b * Vinfb;
        const CMatrix lin1 = a * spin_lax(conf, A, z).entries + b * spin_lax(conf, B, z).entries;
        worst = std::max(worst, relative_max_error(spin_lax(conf, C, z).entries, lin1));
    }
    return make_check("lax.spin_bilinearity", worst, 1e-12, s);
}

CheckResult lax_gauge_spectrum(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        const Lattice lat = random_lattice(rng);
        const auto conf = random_rs_config(rng, 2 + std::size_t(trial % 3), lat);
        const Complex lambda = random_spectral_point(rng, lat) + conf.mu;
        const Complex z = lambda - conf.mu;
        for (auto norm : {RootNormalization::Principal, RootNormalization::Absorbed}) {
            const CMatrix Lp = ruijsenaars_lax(conf, {}, lambda, norm).L.entries;
            RSConfig h = conf;
            h.P = ruijsenaars_to_hasegawa_rapidities(conf, norm);
            const CMatrix Lh = composition_lax(h, z).entries / (sigma(z + conf.mu, lat) / sigma(z, lat));
            const auto a = sorted_values(eigenvalues(Lp));
            const auto b = sorted_values(eigenvalues(Lh));
            double scale = 1.0;
            for (Complex x : b) scale = std::max(scale, std::abs(x));
            worst = std::max(worst, multiset_distance(a, b) / scale);
        }
        // conjugation by a diagonal matrix
        const Complex z2 = random_spectral_point(rng, lat);
        const CMatrix L = composition_lax(conf, z2).entries;
        CVector d(L.rows());
        for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::exp(rng.complex_normal(0.5));
        const CMatrix G = d.asDiagonal() * L * d.cwiseInverse().asDiagonal();
        double scale = 1.0;
        const auto ev = sorted_values(eigenvalues(L));
        for (Complex x : ev) scale = std::max(scale, std::abs(x));
        worst = std::max(worst, multiset_distance(ev, sorted_values(eigenvalues(G))) / scale);
    }
    return make_check("lax.eigenvalue_gauge_invariance", worst, 1e-8, s);
}

CheckResult lax_framing(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Lattice lat = random_lattice(rng);
        worst = std::max(worst, framing_constraint_check(random_rs_config(rng, 1 + std::size_t(trial % 6), lat)));
    }
    return make_check("lax.framing_constraint", worst, 1e-10, s);
}

// ---------------------------------------------------------------- dynamics

Lattice flow_lattice(int idx) { return idx % 2 == 0 ? Lattice::elliptic(Complex(0.0, 1.0)) : Lattice::trigonometric(); }

CheckResult dyn_isospectral(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    std::string detail = "t in [0, 1], dt = 1e-3";
    int idx = 0;
    for (int kind = 0; kind < 2; ++kind)
        for (std::size_t n : {2, 3})
            for (int i : {1, 2}) {
                const Lattice lat = flow_lattice(kind);
                const auto conf = random_flow_config(rng, n, lat);
                HamiltonianSpec spec;
                spec.i = i;
                spec.eval_z = random_spectral_point(rng, lat);
                const auto tr = integrate(spec, phase_point(conf), conf, 1.0, 1e-3);
                if (tr.aborted) {
                    worst = std::numeric_limits<double>::infinity();
                    detail = "trajectory " + std::to_string(idx) + " aborted: " + tr.abort_reason;
                }
                worst = std::max(worst, tr.max_spectral_drift());
                ++idx;
            }
    return make_check("dynamics.isospectrality", worst, 1e-6, s, detail);
}

CheckResult dyn_energy(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    std::string detail = "t in [0, 1], dt = 1e-3";
    for (int kind = 0; kind < 2; ++kind)
        for (std::size_t n : {2, 3}) {
            const Lattice lat = flow_lattice(kind);
            const auto conf = random_flow_config(rng, n, lat);
            HamiltonianSpec spec;
            spec.i = 1 + int(n % 2);
            spec.eval_z = random_spectral_point(rng, lat);
            const auto tr = integrate(spec, phase_point(conf), conf, 1.0, 1e-3);
            if (tr.aborted) {
                worst = std::numeric_limits<double>::infinity();
                detail = "aborted: " + tr.abort_reason;
            }
            worst = std::max(worst, tr.max_energy_drift());
        }
    return make_check("dynamics.energy_conservation", worst, 1e-8, s, detail);
}

CheckResult dyn_involution(Rng& rng, double s, const json&)
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto conf = random_flow_config(rng, 3, lat);
        const Complex z = random_spectral_point(rng, lat);
        const auto point = phase_point(conf);
        for (int a = 1; a <= 3; ++a)
            for (int b = a + 1; b <= 3; ++b) {
                HamiltonianSpec A, B;
                A.i = a;
                B.i = b;
                A.eval_z = B.eval_z = z;
                worst = std::max(worst, std::abs(poisson_bracket(A, B, point, conf)));
            }
    }
    return make_check("dynamics.involution", worst, 1e-6, s, "n = 3, 20 phase points, i < j <= 3");
}

CheckResult dyn_theta_coordinates(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int kind = 0; kind < 2; ++kind) {
        const Lattice lat = flow_lattice(kind);
        const auto conf = random_flow_config(rng, 2, lat);
        HamiltonianSpec spec;
        spec.i = 2;
        spec.eval_z = random_spectral_point(rng, lat);
        const auto a = integrate(spec, phase_point(conf), conf, 0.2, 1e-3);
        const auto b = integrate_theta_coordinates(spec, phase_point(conf), conf, 0.2, 1e-3);
        if (a.aborted || b.aborted || a.points.size() != b.points.size()) {
            worst = std::numeric_limits<double>::infinity();
            continue;
        }
        for (std::size_t k = 0; k < a.points.size(); ++k)
            for (std::size_t i = 0; i < conf.n(); ++i)
                worst = std::max({worst, std::abs(a.points[k].q[i] - b.points[k].q[i]),
                                  std::abs(std::exp(a.points[k].p[i]) - std::exp(b.points[k].p[i]))});
    }
    return make_check("dynamics.theta_coordinates", worst, 1e-8, s, "t in [0, 0.2]");
}

CheckResult dyn_richardson(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
        const auto conf = random_rs_config(rng, 2, lat);
        HamiltonianSpec spec;
        spec.i = 2;
        spec.eval_z = random_spectral_point(rng, lat);
        worst = std::max(worst, std::abs(richardson_ratio(spec, phase_point(conf), conf, 0.02) - 4.0));
    }
    return make_check("dynamics.richardson_ratio", worst, 0.2, s, "|ratio - 4|");
}

// ---------------------------------------------------------------- reductions

OrbitSpec trig_rs_orbit(Rng& rng, const std::vector<Complex>& theta)
{
    OrbitSpec o;
    const auto N = Eigen::Index(theta.size());
    o.u.resize(N);
    for (Eigen::Index i = 0; i < N; ++i) o.u(i) = rng.complex_normal(0.5);
    o.t = Complex(rng.uniform(0.5, 0.8), rng.uniform(-0.3, 0.3));
    o.v = trig_rs_consistent_v(theta, o.u, o.t);
    return o;
}

std::vector<Complex> random_thetas(Rng& rng, std::size_t n)
{
    std::vector<Complex> th(n);
    for (std::size_t i = 0; i < n; ++i) th[i] = Complex(0.6 * double(i) + rng.uniform(-0.15, 0.15), rng.uniform(-0.4, 0.4));
    return th;
}

std::vector<Complex> random_free(Rng& rng, std::size_t n)
{
    std::vector<Complex> d(n);
    for (auto& x : d) x = Complex(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5));
    return d;
}

CheckResult red_moment(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 4);
        OrbitSpec g;
        g.g = Complex(rng.uniform(0.5, 1.5), rng.uniform(-0.3, 0.3));
        const auto cm = random_cm_config(rng, n, Lattice::rational());
        worst = std::max(worst, moment_residual(solve_rational_cm(cm.q, cm.p, g), g.O(Eigen::Index(n))));
        const auto th = random_thetas(rng, n);
        worst = std::max(worst, moment_residual(solve_rational_rs(th, g, random_free(rng, n)), g.O(Eigen::Index(n))));
        const auto tc = solve_trig_cm(cm.q, g, random_free(rng, n));
        worst = std::max({worst, moment_residual(tc.pair, tc.moment), orbit_O_distance(tc.moment, g.g)});
        const auto o = trig_rs_orbit(rng, th);
        worst = std::max(worst, moment_residual(solve_trig_rs(th, o, random_free(rng, n)), o.O_prime()));
    }
    return make_check("reductions.moment_residuals", worst, 1e-10, s, "all four kinds");
}

CheckResult red_cm_lax(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        auto cm = random_cm_config(rng, 2 + std::size_t(trial % 4), Lattice::rational());
        OrbitSpec g;
        g.g = cm.g;
        worst = std::max(worst, max_abs(solve_rational_cm(cm.q, cm.p, g).Y - cm_lax(cm, std::nullopt).entries));
    }
    return make_check("reductions.rational_cm_lax", worst, 1e-300, s, "exact entrywise equality");
}

CheckResult red_dual_involution(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 4);
        OrbitSpec g;
        const auto cm = random_cm_config(rng, n, Lattice::rational());
        const auto th = random_thetas(rng, n);
        std::vector<ReductionPair> pairs{solve_rational_cm(cm.q, cm.p, g), solve_rational_rs(th, g, random_free(rng, n)),
                                         solve_trig_cm(cm.q, g, random_free(rng, n)).pair,
                                         solve_trig_rs(th, trig_rs_orbit(rng, th), random_free(rng, n))};
        for (const auto& pair : pairs)
            worst = std::max(worst, multiset_distance(positions(pair), positions(dualize(dualize(pair)))));
    }
    return make_check("reductions.dualize_involution", worst, 1e-8, s);
}

CheckResult red_dual_spectrum(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto cm = random_cm_config(rng, 2 + std::size_t(trial % 4), Lattice::rational());
        OrbitSpec g;
        const auto pair = solve_rational_cm(cm.q, cm.p, g);
        const auto dual = dualize(pair);
        worst = std::max(worst, multiset_distance(sorted_values(eigenvalues(pair.Y)), sorted_values(positions(dual))));
        worst = std::max(worst, multiset_distance(sorted_values(eigenvalues(pair.X)), sorted_values(eigenvalues(dual.Y))));
    }
    return make_check("reductions.dual_spectrum", worst, 1e-9, s);
}

CheckResult red_trig_rs_det(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + std::size_t(trial % 4);
        const auto th = random_thetas(rng, n);
        const auto o = trig_rs_orbit(rng, th);
        const auto pair = solve_trig_rs(th, o, random_free(rng, n));
        worst = std::max(worst, rel(determinant(moment_map(pair)), o.det_O_prime()));
    }
    return make_check("reductions.trig_rs_determinant", worst, 1e-10, s, "det = t^(n-1) (t + v^T u)");
}

// ---------------------------------------------------------------- limits

CheckResult lim_degeneration(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        auto conf = random_rs_config(rng, 2 + std::size_t(trial % 2), Lattice::elliptic(Complex(0.0, 1.0)));
        conf.lat = Lattice::elliptic(Complex(0.0, 20.0));
        worst = std::max(worst, degeneration_residual(conf, random_spectral_point(rng, conf.lat)));
    }
    return make_check("limits.degeneration_im_tau_20", worst, 1e-8, s, "20 configs, n in {2, 3}");
}

CheckResult lim_cm_order(Rng& rng, double s, const json&)
{
    double worst = 0.0;
    std::ostringstream orders;
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    for (std::size_t n : {2, 3}) {
        const auto conf = random_rs_config(rng, n, lat);
        auto cm = random_cm_config(rng, n, lat);
        cm.q = conf.q;
        const auto sweep = cm_limit_sweep(conf, cm, {1e-2, 5e-3, 2.5e-3}, random_spectral_point(rng, lat));
        const double dev = std::abs(sweep.fitted_order - 1.0);
        worst = std::isfinite(dev) ? std::max(worst, dev) : std::numeric_limits<double>::infinity();
        orders << (n == 2 ? "" : ", ") << "n=" << n << ": " << format_double(sweep.fitted_order);
    }
    return make_check("limits.cm_order", worst, 0.15, s, orders.str());
}

CheckResult lim_recorded(Rng& rng, double s, const json&)
{
    const Lattice lat = Lattice::elliptic(Complex(0.0, 1.0));
    const auto conf = random_rs_config(rng, 2, lat);
    std::size_t missing = 0;
    const auto deg = degeneration_sweep(conf, {2, 3, 5, 10, 20}, random_spectral_point(rng, lat));
    if (deg.errors.size() != deg.values.size()) ++missing;
    std::size_t nan = 0;
    for (double e : deg.errors) nan += std::isnan(e) ? 1 : 0;
    if (nan != deg.failures.size()) ++missing;
    auto cm = random_cm_config(rng, 2, lat);
    cm.q = conf.q;
    const auto lim = cm_limit_sweep(conf, cm, {1e-2, 5e-3, 2.5e-3}, random_spectral_point(rng, lat));
    if (lim.errors.size() != lim.values.size()) ++missing;
    for (double e : lim.errors)
        if (!std::isfinite(e)) ++missing;
    return make_check("limits.sweeps_recorded", double(missing), 0.5, s,
                      describe("failed points recorded with a message", deg.failures.size()));
}

} // namespace

const std::vector<CheckDefinition>& verify_checks()
{
    static const std::vector<CheckDefinition> checks{
        {"elliptic.sigma_quasi_periodicity", sigma_quasi_periodicity},
        {"elliptic.legendre_relation", legendre_relation},
        {"elliptic.wp_second_log_derivative", wp_second_log_derivative},
        {"elliptic.wp_periodicity", wp_periodicity},
        {"elliptic.sigma_degeneration", sigma_degeneration},
        {"cauchy.frobenius_determinant", cauchy_determinant},
        {"cauchy.minor_formula", cauchy_minors},
        {"cauchy.cofactor_inverse", cauchy_cofactor_inverse},
        {"cauchy.cocycle", cauchy_cocycle},
        {"cauchy.matrix_product", cauchy_matrix_product},
        {"cauchy.rational_classical", cauchy_rational_classical},
        {"lax.geometric_equality", lax_geometric},
        {"lax.singular_limit", lax_singular_limit},
        {"lax.hbar_zero_collapse", lax_hbar_zero},
        {"lax.spin_unit_framing", lax_spin_unit},
        {"lax.spin_bilinearity", lax_spin_bilinear},
        {"lax.eigenvalue_gauge_invariance", lax_gauge_spectrum},
        {"lax.framing_constraint", lax_framing},
        {"dynamics.isospectrality", dyn_isospectral},
        {"dynamics.energy_conservation", dyn_energy},
        {"dynamics.involution", dyn_involution},
        {"dynamics.theta_coordinates", dyn_theta_coordinates},
        {"dynamics.richardson_ratio", dyn_richardson},
        {"reductions.moment_residuals", red_moment},
        {"reductions.rational_cm_lax", red_cm_lax},
        {"reductions.dualize_involution", red_dual_involution},
        {"reductions.dual_spectrum", red_dual_spectrum},
        {"reductions.trig_rs_determinant", red_trig_rs_det},
        {"limits.degeneration_im_tau_20", lim_degeneration},
        {"limits.cm_order", lim_cm_order},
        {"limits.sweeps_recorded", lim_recorded},
    };
    return checks;
}

} // namespace rslax::harness
