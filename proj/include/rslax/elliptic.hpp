#pragma once

#include <array>
#include <functional>

#include "rslax/core.hpp"

namespace rslax {

enum class LatticeKind { Elliptic, Trigonometric, Rational };

const char* to_string(LatticeKind kind);

// Periods are full periods: sigma(z + omega1) = -exp(2 eta1 (z + omega1/2)) sigma(z).
// Degenerate kinds use sigma = sin (period pi) and sigma = z.
struct Lattice {
    Complex omega1{1.0, 0.0};
    Complex omega2{0.0, 1.0};
    Complex tau{0.0, 1.0};
    Complex eta1{};
    Complex eta2{};
    LatticeKind kind = LatticeKind::Elliptic;

    // normalized-lattice (1, tau) data
    Complex eta1_unit{};
    Complex theta1_prime{};

    static Lattice elliptic(Complex tau, Complex omega1 = 1.0);
    static Lattice from_periods(Complex omega1, Complex omega2);
    static Lattice trigonometric();
    static Lattice rational();

    bool is_elliptic() const { return kind == LatticeKind::Elliptic; }

    // |(eta1 omega2 - eta2 omega1)/2 - i pi/2|, zero for degenerate kinds
    double legendre_residual() const;

    double distance_to_lattice(Complex z) const;
};

struct ThetaCharacteristic {
    Complex a{};
    Complex b{};
};

// exp(A u + B u^2) * C
struct TrivialTheta {
    Complex A{};
    Complex B{};
    Complex C{1.0, 0.0};
    double residual = 0.0;

    Complex operator()(Complex u) const { return C * std::exp(A * u + B * u * u); }
    Complex log_value(Complex u) const { return std::log(C) + A * u + B * u * u; }
};

inline constexpr double kPoleTolerance = 1e-8;
inline constexpr int kThetaTermCap = 200;

// value and first three z-derivatives of theta[a;b](z|tau)
std::array<Complex, 4> theta_jet(ThetaCharacteristic ch, Complex z, Complex tau, int order = 3);

Complex theta_char(ThetaCharacteristic ch, Complex z, Complex tau);

Complex sigma(Complex z, const Lattice& lat);
Complex wp(Complex z, const Lattice& lat);
Complex zeta(Complex z, const Lattice& lat);

Complex section_phi(Complex q, Complex z, const Lattice& lat);

// Fits f(u)/g(u) = C exp(A u + B u^2) from anchor, anchor+h, anchor+ih and
// validates on five further points. residual is the worst relative mismatch.
TrivialTheta fit_trivial_gauge(const std::function<Complex(Complex)>& f,
                               const std::function<Complex(Complex)>& g, Complex anchor,
                               double h = 0.2);

// sigma(omega1 (u + a tau + b)) = C exp(A u + B u^2) theta[1/2+a; 1/2+b](u | tau)
TrivialTheta fit_trivial_theta(ThetaCharacteristic ch, const Lattice& lat);
TrivialTheta trivial_theta_closed_form(ThetaCharacteristic ch, const Lattice& lat);

} // namespace rslax
