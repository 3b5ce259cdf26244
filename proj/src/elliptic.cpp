#include "rslax/elliptic.hpp"

#include <cmath>
#include <limits>

namespace rslax {

const char* to_string(LatticeKind kind)
{
    switch (kind) {
    case LatticeKind::Elliptic: return "elliptic";
    case LatticeKind::Trigonometric: return "trigonometric";
    case LatticeKind::Rational: return "rational";
    }
    return "unknown";
}

std::array<Complex, 4> theta_jet(ThetaCharacteristic ch, Complex z, Complex tau, int order)
{
    if (!(tau.imag() > 0.0) || !is_finite(tau))
        throw Error(ErrorKind::NonConvergent, "theta series needs Im(tau) > 0");
    if (!is_finite(z) || !is_finite(ch.a) || !is_finite(ch.b))
        throw Error(ErrorKind::InvalidArgument, "non-finite theta argument");

    const Complex a = ch.a;
    const Complex w = z + ch.b;
    const double kstar = -(tau * a + w).imag() / tau.imag();
    const double k0 = std::round(kstar);

    const Complex two_pi_i = 2.0 * pi * I;
    const Complex Q = std::exp(two_pi_i * tau);

    auto exponent = [&](double k) {
        const Complex m = k + a;
        return pi * I * tau * m * m + two_pi_i * m * w;
    };
    const Complex e0 = exponent(k0);
    if (e0.real() > 700.0)
        throw Error(ErrorKind::NonConvergent, "theta series overflows at this argument");

    std::array<Complex, 4> acc{};
    auto add = [&](double k, Complex term) {
        const Complex f = two_pi_i * (k + a);
        Complex p = term;
        acc[0] += p;
        for (int m = 1; m <= order; ++m) {
            p *= f;
            acc[m] += p;
        }
        return std::abs(term) * std::pow(1.0 + std::abs(f), order);
    };

    const Complex t0 = std::exp(e0);
    const double peak = add(k0, t0);
    const double cutoff = 1e-17 * peak;

    // upward: term(k+1) / term(k) = exp(pi i tau (2(k+a)+1) + 2 pi i w)
    {
        Complex term = t0;
        Complex ratio = std::exp(pi * I * tau * (2.0 * (k0 + a) + 1.0) + two_pi_i * w);
        int steps = 0;
        for (double k = k0 + 1.0;; k += 1.0) {
            term *= ratio;
            ratio *= Q;
            const double weight = add(k, term);
            if (weight < cutoff || term == Complex{}) break;
            if (++steps > kThetaTermCap) throw Error(ErrorKind::NonConvergent, "theta series term cap reached");
        }
    }
    // downward: term(k-1) / term(k) = exp(-pi i tau (2(k+a)-1) - 2 pi i w)
    {
        Complex term = t0;
        Complex ratio = std::exp(-pi * I * tau * (2.0 * (k0 + a) - 1.0) - two_pi_i * w);
        int steps = 0;
        for (double k = k0 - 1.0;; k -= 1.0) {
            term *= ratio;
            ratio *= Q;
            const double weight = add(k, term);
            if (weight < cutoff || term == Complex{}) break;
            if (++steps > kThetaTermCap) throw Error(ErrorKind::NonConvergent, "theta series term cap reached");
        }
    }
    return acc;
}

Complex theta_char(ThetaCharacteristic ch, Complex z, Complex tau)
{
    return theta_jet(ch, z, tau, 0)[0];
}

namespace {

const ThetaCharacteristic kTheta1{0.5, 0.5};

} // namespace

Lattice Lattice::elliptic(Complex tau, Complex omega1)
{
    if (!(tau.imag() > 0.0)) throw Error(ErrorKind::NonConvergent, "Im(tau) must be positive");
    if (std::abs(omega1) == 0.0) throw Error(ErrorKind::InvalidArgument, "zero period");
    Lattice lat;
    lat.kind = LatticeKind::Elliptic;
    lat.tau = tau;
    lat.omega1 = omega1;
    lat.omega2 = omega1 * tau;
    const auto jet = theta_jet(kTheta1, 0.0, tau, 3);
    lat.theta1_prime = jet[1];
    lat.eta1_unit = -jet[3] / (6.0 * jet[1]);
    lat.eta1 = lat.eta1_unit / omega1;
    lat.eta2 = (lat.eta1_unit * tau - pi * I) / omega1;
    return lat;
}

Lattice Lattice::from_periods(Complex omega1, Complex omega2)
{
    if (std::abs(omega1) == 0.0 || std::abs(omega2) == 0.0)
        throw Error(ErrorKind::InvalidArgument, "zero period");
    Complex tau = omega2 / omega1;
    if (std::abs(tau.imag()) < 1e-12) throw Error(ErrorKind::InvalidArgument, "periods are collinear");
    if (tau.imag() < 0.0) std::swap(omega1, omega2);
    Lattice lat = elliptic(omega2 / omega1, omega1);
    lat.omega2 = omega2;
    return lat;
}

Lattice Lattice::trigonometric()
{
    Lattice lat;
    lat.kind = LatticeKind::Trigonometric;
    lat.omega1 = pi;
    lat.omega2 = 0.0;
    lat.tau = 0.0;
    return lat;
}

Lattice Lattice::rational()
{
    Lattice lat;
    lat.kind = LatticeKind::Rational;
    lat.omega1 = 0.0;
    lat.omega2 = 0.0;
    lat.tau = 0.0;
    return lat;
}

double Lattice::legendre_residual() const
{
    if (kind != LatticeKind::Elliptic) return 0.0;
    return std::abs(0.5 * (eta1 * omega2 - eta2 * omega1) - 0.5 * pi * I);
}

double Lattice::distance_to_lattice(Complex z) const
{
    switch (kind) {
    case LatticeKind::Rational: return std::abs(z);
    case LatticeKind::Trigonometric: {
        const double m = std::round(z.real() / pi);
        return std::abs(z - m * pi);
    }
    case LatticeKind::Elliptic: break;
    }
    Complex u = z / omega1;
    const double m = std::round(u.imag() / tau.imag());
    u -= m * tau;
    u -= std::round(u.real());
    double best = std::numeric_limits<double>::infinity();
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) best = std::min(best, std::abs(omega1 * (u - double(i) - double(j) * tau)));
    return best;
}

Complex sigma(Complex z, const Lattice& lat)
{
    switch (lat.kind) {
    case LatticeKind::Rational: return z;
    case LatticeKind::Trigonometric: return std::sin(z);
    case LatticeKind::Elliptic: break;
    }
    const Complex u = z / lat.omega1;
    return lat.omega1 * std::exp(lat.eta1_unit * u * u) * theta_char(kTheta1, u, lat.tau) / lat.theta1_prime;
}

namespace {

void require_off_lattice(Complex z, const Lattice& lat, const char* what)
{
    if (lat.distance_to_lattice(z) < kPoleTolerance)
        throw Error(ErrorKind::PoleAtLattice, std::string(what) + " evaluated on a lattice point");
}

} // namespace

Complex wp(Complex z, const Lattice& lat)
{
    require_off_lattice(z, lat, "wp");
    switch (lat.kind) {
    case LatticeKind::Rational: return 1.0 / (z * z);
    case LatticeKind::Trigonometric: {
        const Complex s = std::sin(z);
        return 1.0 / (s * s);
    }
    case LatticeKind::Elliptic: break;
    }
    const Complex u = z / lat.omega1;
    const auto d = theta_jet(kTheta1, u, lat.tau, 2);
    const Complex logd2 = (d[2] * d[0] - d[1] * d[1]) / (d[0] * d[0]);
    return (-2.0 * lat.eta1_unit - logd2) / (lat.omega1 * lat.omega1);
}

Complex zeta(Complex z, const Lattice& lat)
{
    require_off_lattice(z, lat, "zeta");
    switch (lat.kind) {
    case LatticeKind::Rational: return 1.0 / z;
    case LatticeKind::Trigonometric: return std::cos(z) / std::sin(z);
    case LatticeKind::Elliptic: break;
    }
    const Complex u = z / lat.omega1;
    const auto d = theta_jet(kTheta1, u, lat.tau, 1);
    return (2.0 * lat.eta1_unit * u + d[1] / d[0]) / lat.omega1;
}

Complex section_phi(Complex q, Complex z, const Lattice& lat)
{
    require_off_lattice(z, lat, "section_phi");
    return sigma(z - q, lat) / sigma(z, lat);
}

TrivialTheta fit_trivial_gauge(const std::function<Complex(Complex)>& f,
                               const std::function<Complex(Complex)>& g, Complex anchor, double h)
{
    auto ratio = [&](Complex u) {
        const Complex gv = g(u);
        const Complex fv = f(u);
        if (std::abs(gv) < 1e-280 || !is_finite(gv) || !is_finite(fv) || std::abs(fv) < 1e-280)
            throw Error(ErrorKind::FitDegenerate, "sample point sits on a zero of the gauge relation");
        return fv / gv;
    };

    const Complex u0 = anchor;
    const Complex u1 = anchor + h;
    const Complex u2 = anchor + I * h;
    const Complex r0 = ratio(u0);
    const Complex d1 = std::log(ratio(u1) / r0);
    const Complex d2 = std::log(ratio(u2) / r0);

    // A (u_k - u0) + B (u_k^2 - u0^2) = d_k
    Eigen::Matrix2cd M;
    M << u1 - u0, u1 * u1 - u0 * u0, u2 - u0, u2 * u2 - u0 * u0;
    Eigen::Vector2cd rhs(d1, d2);
    const Eigen::Vector2cd sol = M.fullPivLu().solve(rhs);

    TrivialTheta out;
    out.A = sol(0);
    out.B = sol(1);
    out.C = std::exp(std::log(r0) - out.A * u0 - out.B * u0 * u0);
    if (out.C == Complex{} || !is_finite(out.C))
        throw Error(ErrorKind::FitDegenerate, "fitted constant is zero or non-finite");

    static const Complex offsets[5] = {{0.5, 0.3}, {-0.4, 0.2}, {0.3, -0.5}, {-0.2, -0.35}, {0.6, 0.55}};
    double worst = 0.0;
    for (Complex off : offsets) {
        const Complex u = anchor + h * off;
        const Complex r = ratio(u);
        worst = std::max(worst, std::abs(r - out(u)) / std::abs(r));
    }
    out.residual = worst;
    return out;
}

TrivialTheta fit_trivial_theta(ThetaCharacteristic ch, const Lattice& lat)
{
    if (!lat.is_elliptic()) throw Error(ErrorKind::InvalidArgument, "trivial theta fit needs an elliptic lattice");
    const Complex shift = ch.a * lat.tau + ch.b;
    const ThetaCharacteristic target{0.5 + ch.a, 0.5 + ch.b};
    auto f = [&](Complex u) { return sigma(lat.omega1 * (u + shift), lat); };
    auto g = [&](Complex u) { return theta_char(target, u, lat.tau); };
    const Complex anchor = -shift + 0.5 * (1.0 + lat.tau);
    return fit_trivial_gauge(f, g, anchor);
}

TrivialTheta trivial_theta_closed_form(ThetaCharacteristic ch, const Lattice& lat)
{
    if (!lat.is_elliptic()) throw Error(ErrorKind::InvalidArgument, "trivial theta needs an elliptic lattice");
    const Complex eta = lat.eta1_unit;
    const Complex s = ch.a * lat.tau + ch.b;
    TrivialTheta out;
    out.B = eta;
    out.A = 2.0 * eta * s - 2.0 * pi * I * ch.a;
    out.C = lat.omega1 *
            std::exp(eta * s * s - pi * I * lat.tau * ch.a * ch.a - 2.0 * pi * I * ch.a * (0.5 + ch.b)) /
            lat.theta1_prime;
    return out;
}

} // namespace rslax
