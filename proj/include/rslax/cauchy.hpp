#pragma once

#include <functional>
#include <vector>

#include "rslax/elliptic.hpp"

namespace rslax {

// Frobenius:  H_ij = sigma(q_i - r_j + lambda) / (sigma(lambda) sigma(q_i - r_j))
// Displayed:  H_ij = sigma(q_i - r_j - lambda) / (sigma(lambda - q_inf) sigma(q_i - r_j - q_inf))
enum class CauchyConvention { Frobenius, Displayed };

const char* to_string(CauchyConvention c);

struct CauchyMatrixSpec {
    std::vector<Complex> qs;
    std::vector<Complex> rs;
    Complex q_inf{};
    Lattice lat;
};

struct SpectralMatrix {
    CMatrix entries;
    Complex lambda{};

    Eigen::Index n() const { return entries.rows(); }
};

inline constexpr double kDistinctness = 1e-6;

SpectralMatrix build_elliptic_cauchy(const CauchyMatrixSpec& spec, Complex lambda,
                                     CauchyConvention convention = CauchyConvention::Frobenius);

Complex frobenius_determinant(const CauchyMatrixSpec& spec, Complex lambda,
                              CauchyConvention convention = CauchyConvention::Frobenius);

// rows k and column l removed, 0-based
Complex minor_determinant(const CauchyMatrixSpec& spec, Complex lambda, std::size_t k, std::size_t l,
                          CauchyConvention convention = CauchyConvention::Frobenius);

// sigma(lambda + sum(x - y))/sigma(lambda) prod_{i<j} sigma(x_i - x_j) sigma(y_j - y_i) / prod sigma(x_i - y_j)
Complex frobenius_closed_form(const std::vector<Complex>& x, const std::vector<Complex>& y, Complex lambda,
                              const Lattice& lat);

using MatrixFunction = std::function<CMatrix(Complex)>;

// F(z)^{-1} F(z+u)
SpectralMatrix shifted_inverse_product(const MatrixFunction& F, Complex z, Complex u);

// same product through column-replacement determinant ratios
CMatrix shifted_inverse_product_det_ratio(const MatrixFunction& F, Complex z, Complex u);

} // namespace rslax
