#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rslax {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

enum class ErrorKind {
    PoleAtLattice,
    NonConvergent,
    FitDegenerate,
    DegenerateConfiguration,
    SingularMatrix,
    ZeroMu,
    ZeroLambda,
    CollisionImminent,
    NoSolution,
    SingularY,
    NonDiagonalizable,
    RepeatedEigenvalues,
    GaugeFitFailed,
    ConfigInvalid,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this exception type; `kind()`
// lets callers branch on the failure class without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::PoleAtLattice: return "PoleAtLattice";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::FitDegenerate: return "FitDegenerate";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::ZeroMu: return "ZeroMu";
    case ErrorKind::ZeroLambda: return "ZeroLambda";
    case ErrorKind::CollisionImminent: return "CollisionImminent";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::SingularY: return "SingularY";
    case ErrorKind::NonDiagonalizable: return "NonDiagonalizable";
    case ErrorKind::RepeatedEigenvalues: return "RepeatedEigenvalues";
    case ErrorKind::GaugeFitFailed: return "GaugeFitFailed";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace rslax
