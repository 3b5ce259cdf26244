#pragma once

#include <string>
#include <vector>

#include "rslax/lax.hpp"

namespace rslax {

enum class HamiltonianFamily { TracePower, RSCosh, HitchinComponent };
enum class LaxFamily { Hasegawa, Composition };

const char* to_string(HamiltonianFamily f);
const char* to_string(LaxFamily f);

struct HamiltonianSpec {
    HamiltonianFamily family = HamiltonianFamily::TracePower;
    int i = 1;
    LaxFamily lax = LaxFamily::Hasegawa;
    Complex eval_z{0.3, 0.2};
};

struct PhasePoint {
    std::vector<Complex> q;
    std::vector<Complex> p;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<PhasePoint> points;
    std::vector<double> spectral_drift;
    std::vector<double> energy_drift;
    bool aborted = false;
    std::string abort_reason;

    double max_spectral_drift() const;
    double max_energy_drift() const;
};

struct FdOptions {
    double h = 1e-5;
    // average the real and imaginary difference quotients and record their mismatch
    bool wirtinger = false;
};

struct Gradient {
    std::vector<Complex> dq;
    std::vector<Complex> dp;
    double cr_defect = 0.0;
};

struct VectorField {
    std::vector<Complex> dq;
    std::vector<Complex> dp;
};

PhasePoint phase_point(const RSConfig& conf);
RSConfig with_point(const RSConfig& conf, const PhasePoint& point);

// the Lax matrix whose spectrum the Hamiltonian is built from
CMatrix hamiltonian_lax(const HamiltonianSpec& spec, const RSConfig& conf);

Complex hamiltonian(const HamiltonianSpec& spec, const RSConfig& conf);

Gradient hamiltonian_gradient(const HamiltonianSpec& spec, const PhasePoint& point, const RSConfig& conf,
                              const FdOptions& fd = {});

// dq = dH/dp, dp = -dH/dq
VectorField hamiltonian_vector_field(const HamiltonianSpec& spec, const PhasePoint& point, const RSConfig& conf,
                                     const FdOptions& fd = {});

Trajectory integrate(const HamiltonianSpec& spec, const PhasePoint& start, const RSConfig& conf, double t_end,
                     double dt, const FdOptions& fd = {});

// same flow in (q, theta = e^p) with dq = theta dH/dtheta, dtheta = -theta dH/dq;
// returned points carry p = log(theta) continued from the start value
Trajectory integrate_theta_coordinates(const HamiltonianSpec& spec, const PhasePoint& start, const RSConfig& conf,
                                       double t_end, double dt, const FdOptions& fd = {});

Complex poisson_bracket(const HamiltonianSpec& a, const HamiltonianSpec& b, const PhasePoint& point,
                        const RSConfig& conf, const FdOptions& fd = {});

// |D(h) - D(h/2)| / |D(h/2) - D(h/4)| over the whole gradient
double richardson_ratio(const HamiltonianSpec& spec, const PhasePoint& point, const RSConfig& conf, double h0);

} // namespace rslax
