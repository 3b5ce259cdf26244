#include "rslax/cauchy.hpp"

#include <cmath>

#include "rslax/linalg.hpp"

namespace rslax {

const char* to_string(CauchyConvention c)
{
    return c == CauchyConvention::Frobenius ? "frobenius" : "displayed";
}

namespace {

void check_shape(const CauchyMatrixSpec& spec)
{
    if (spec.qs.empty() || spec.qs.size() != spec.rs.size())
        throw Error(ErrorKind::InvalidArgument, "qs and rs must have equal nonzero length");
}

bool infinite(Complex z) { return std::isinf(z.real()) || std::isinf(z.imag()); }

// sigma(lambda + s) / sigma(lambda)
Complex shifted_ratio(Complex lambda, Complex s, const Lattice& lat)
{
    if (lat.kind == LatticeKind::Rational) {
        if (infinite(lambda)) return 1.0;
        if (std::abs(lambda) < kPoleTolerance) throw Error(ErrorKind::PoleAtLattice, "sigma(lambda) vanishes");
        return 1.0 + s / lambda;
    }
    if (lat.distance_to_lattice(lambda) < kPoleTolerance)
        throw Error(ErrorKind::PoleAtLattice, "sigma(lambda) vanishes");
    return sigma(lambda + s, lat) / sigma(lambda, lat);
}

std::vector<Complex> without(const std::vector<Complex>& v, std::size_t k)
{
    std::vector<Complex> out;
    out.reserve(v.size() - 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (i != k) out.push_back(v[i]);
    return out;
}

std::vector<Complex> shifted(std::vector<Complex> v, Complex s)
{
    for (auto& x : v) x += s;
    return v;
}

} // namespace

SpectralMatrix build_elliptic_cauchy(const CauchyMatrixSpec& spec, Complex lambda, CauchyConvention convention)
{
    check_shape(spec);
    const auto& lat = spec.lat;
    const std::size_t n = spec.qs.size();
    SpectralMatrix out;
    out.lambda = lambda;
    out.entries.resize(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex d = spec.qs[i] - spec.rs[j];
            if (convention == CauchyConvention::Frobenius) {
                if (lat.distance_to_lattice(d) < kPoleTolerance)
                    throw Error(ErrorKind::PoleAtLattice, "sigma(q_i - r_j) vanishes");
                if (lat.kind == LatticeKind::Rational && infinite(lambda)) {
                    out.entries(i, j) = 1.0 / d;
                    continue;
                }
                if (lat.distance_to_lattice(lambda) < kPoleTolerance)
                    throw Error(ErrorKind::PoleAtLattice, "sigma(lambda) vanishes");
                out.entries(i, j) = sigma(d + lambda, lat) / (sigma(lambda, lat) * sigma(d, lat));
            } else {
                if (lat.distance_to_lattice(lambda - spec.q_inf) < kPoleTolerance ||
                    lat.distance_to_lattice(d - spec.q_inf) < kPoleTolerance)
                    throw Error(ErrorKind::PoleAtLattice, "denominator sigma vanishes");
                out.entries(i, j) =
                    sigma(d - lambda, lat) / (sigma(lambda - spec.q_inf, lat) * sigma(d - spec.q_inf, lat));
            }
        }
    }
    return out;
}

Complex frobenius_closed_form(const std::vector<Complex>& x, const std::vector<Complex>& y, Complex lambda,
                              const Lattice& lat)
{
    const std::size_t n = x.size();
    if (y.size() != n) throw Error(ErrorKind::InvalidArgument, "length mismatch");
    if (n == 0) return 1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (lat.distance_to_lattice(x[i] - y[j]) < kDistinctness)
                throw Error(ErrorKind::DegenerateConfiguration, "q_i coincides with r_j modulo the lattice");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (lat.distance_to_lattice(x[i] - x[j]) < kDistinctness ||
                lat.distance_to_lattice(y[i] - y[j]) < kDistinctness)
                return 0.0;

    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] - y[i];
    Complex value = shifted_ratio(lambda, s, lat);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) value *= sigma(x[i] - x[j], lat) * sigma(y[j] - y[i], lat);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) value /= sigma(x[i] - y[j], lat);
    return value;
}

Complex frobenius_determinant(const CauchyMatrixSpec& spec, Complex lambda, CauchyConvention convention)
{
    check_shape(spec);
    if (convention == CauchyConvention::Frobenius) return frobenius_closed_form(spec.qs, spec.rs, lambda, spec.lat);
    const double sign = (spec.qs.size() % 2 == 0) ? 1.0 : -1.0;
    return sign * frobenius_closed_form(spec.qs, shifted(spec.rs, spec.q_inf), spec.q_inf - lambda, spec.lat);
}

Complex minor_determinant(const CauchyMatrixSpec& spec, Complex lambda, std::size_t k, std::size_t l,
                          CauchyConvention convention)
{
    check_shape(spec);
    const std::size_t n = spec.qs.size();
    if (k >= n || l >= n) throw Error(ErrorKind::InvalidArgument, "minor index out of range");
    if (n == 1) return 1.0;
    const auto x = without(spec.qs, k);
    const auto y = without(spec.rs, l);
    if (convention == CauchyConvention::Frobenius) return frobenius_closed_form(x, y, lambda, spec.lat);
    const double sign = ((n - 1) % 2 == 0) ? 1.0 : -1.0;
    return sign * frobenius_closed_form(x, shifted(y, spec.q_inf), spec.q_inf - lambda, spec.lat);
}

SpectralMatrix shifted_inverse_product(const MatrixFunction& F, Complex z, Complex u)
{
    const CMatrix A = F(z);
    SpectralMatrix out;
    out.lambda = z;
    out.entries = solve_left(A, F(z + u));
    return out;
}

CMatrix shifted_inverse_product_det_ratio(const MatrixFunction& F, Complex z, Complex u)
{
    const CMatrix A = F(z);
    const CMatrix B = F(z + u);
    if (is_numerically_singular(A)) throw Error(ErrorKind::SingularMatrix, "F(z) is numerically singular");
    const Complex d = determinant(A);
    const auto n = A.cols();
    CMatrix out(n, B.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < B.cols(); ++j) {
            CMatrix R = A;
            R.col(i) = B.col(j);
            out(i, j) = determinant(R) / d;
        }
    }
    return out;
}

} // namespace rslax
