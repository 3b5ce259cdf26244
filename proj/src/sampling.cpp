#include "rslax/sampling.hpp"

#include <cmath>

namespace rslax {

namespace {

std::uint64_t splitmix64(std::uint64_t& x)
{
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed)
{
    std::uint64_t x = seed;
    for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next()
{
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return double(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal()
{
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

Complex Rng::complex_normal(double scale)
{
    const double re = normal();
    const double im = normal();
    return scale * Complex(re, im);
}

std::size_t Rng::index(std::size_t n) { return std::size_t(uniform() * double(n)) % n; }

Rng Rng::substream(std::uint64_t tag) const
{
    std::uint64_t x = seed_ ^ (tag * 0xD1B54A32D192ED03ULL);
    return Rng(splitmix64(x));
}

std::uint64_t hash_tag(const char* name)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char* p = name; *p; ++p) {
        h ^= std::uint64_t(static_cast<unsigned char>(*p));
        h *= 0x100000001B3ULL;
    }
    return h;
}

Lattice random_lattice(Rng& rng)
{
    const Complex tau(rng.uniform(-0.4, 0.4), rng.uniform(0.75, 1.5));
    const Complex omega1 = std::polar(rng.uniform(0.7, 1.3), rng.uniform(-0.5, 0.5));
    return Lattice::elliptic(tau, omega1);
}

std::vector<Complex> random_positions(Rng& rng, std::size_t n, const Lattice& lat)
{
    std::vector<Complex> q(n);
    const double nd = double(n);
    switch (lat.kind) {
    case LatticeKind::Elliptic:
        for (std::size_t k = 0; k < n; ++k) {
            const double x = 0.1 + 0.8 * double(k) / nd + rng.uniform(-0.25, 0.25) / nd;
            const Complex u = x + lat.tau * rng.uniform(-0.12, 0.12);
            q[k] = lat.omega1 * u;
        }
        break;
    case LatticeKind::Trigonometric:
        for (std::size_t k = 0; k < n; ++k) {
            const double x = 0.1 + 0.8 * double(k) / nd + rng.uniform(-0.25, 0.25) / nd;
            q[k] = pi * Complex(x, rng.uniform(-0.1, 0.1));
        }
        break;
    case LatticeKind::Rational:
        for (std::size_t k = 0; k < n; ++k) q[k] = Complex(double(k) + rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3));
        break;
    }
    return q;
}

namespace {

Complex unit_scale(const Lattice& lat)
{
    switch (lat.kind) {
    case LatticeKind::Elliptic: return lat.omega1;
    case LatticeKind::Trigonometric: return pi;
    case LatticeKind::Rational: return 1.0;
    }
    return 1.0;
}

} // namespace

RSConfig random_rs_config(Rng& rng, std::size_t n, const Lattice& lat)
{
    auto q = random_positions(rng, n, lat);
    std::vector<Complex> P(n);
    for (auto& p : P) p = rng.complex_normal(0.2);
    const Complex s = unit_scale(lat);
    const Complex hbar = s * std::polar(rng.uniform(0.08, 0.25), rng.uniform(-0.6, 0.6));
    const Complex q_inf = s * Complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.15, 0.15));
    return RSConfig::make(std::move(q), std::move(P), hbar, lat, q_inf);
}

RSConfig random_flow_config(Rng& rng, std::size_t n, const Lattice& lat)
{
    const Complex s = unit_scale(lat);
    std::vector<Complex> q(n), P(n);
    for (std::size_t k = 0; k < n; ++k) {
        q[k] = s * (Complex(double(k) / double(n), 0.0) + rng.complex_normal(0.02));
        P[k] = -1.0 + rng.complex_normal(0.15);
    }
    const Complex hbar = s * std::polar(rng.uniform(0.05, 0.15), rng.uniform(-0.6, 0.6));
    return RSConfig::make(std::move(q), std::move(P), hbar, lat);
}

CMConfig random_cm_config(Rng& rng, std::size_t n, const Lattice& lat)
{
    CMConfig c;
    c.lat = lat;
    c.q = random_positions(rng, n, lat);
    c.p.resize(n);
    for (auto& p : c.p) p = rng.complex_normal(0.5);
    c.g = Complex(rng.uniform(0.5, 1.5), rng.uniform(-0.3, 0.3));
    return c;
}

Complex random_spectral_point(Rng& rng, const Lattice& lat)
{
    const Complex s = unit_scale(lat);
    return s * Complex(rng.uniform(0.2, 0.4), rng.uniform(0.15, 0.3));
}

} // namespace rslax
