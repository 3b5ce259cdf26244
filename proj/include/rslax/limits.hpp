#pragma once

#include <string>
#include <vector>

#include "rslax/lax.hpp"

namespace rslax {

enum class SweepParameter { ImTau, Hbar };

const char* to_string(SweepParameter p);

struct LimitSweep {
    SweepParameter parameter = SweepParameter::Hbar;
    std::vector<double> values;
    std::vector<double> errors;
    // NaN when fewer than two usable points
    double fitted_order = 0.0;
    // one message per point that could not be evaluated; its error is recorded as NaN
    std::vector<std::string> failures;
};

// least-squares slope of log(error) against log(value) over finite positive errors
double log_log_slope(const std::vector<double>& values, const std::vector<double>& errors);

// non-increasing once both neighbours are above the floor
bool monotone_decreasing(const std::vector<double>& errors, double floor);

// relative entrywise distance between hasegawa_lax on conf.lat and the gauge-transformed
// trigonometric matrix; positions, hbar and z are read in units of the real period
double degeneration_residual(const RSConfig& conf, Complex z);

// conf positions, rapidities and hbar are reused on tau = i t, omega1 = 1
LimitSweep degeneration_sweep(const RSConfig& conf, const std::vector<double>& im_tau_values, Complex z);

// |(composition_lax(hbar, P = hbar p) - I)/hbar - factorized_cm_lax| / |factorized_cm_lax|
double cm_limit_residual(const RSConfig& conf, const CMConfig& cmconf, double hbar, Complex z);

LimitSweep cm_limit_sweep(const RSConfig& conf, const CMConfig& cmconf, const std::vector<double>& hbar_values,
                          Complex z);

double framing_constraint_check(const RSConfig& conf);

} // namespace rslax
