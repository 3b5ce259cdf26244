#include "rslax/limits.hpp"

#include <cmath>
#include <limits>

#include "rslax/linalg.hpp"

namespace rslax {

const char* to_string(SweepParameter p) { return p == SweepParameter::ImTau ? "im_tau" : "hbar"; }

double log_log_slope(const std::vector<double>& values, const std::vector<double>& errors)
{
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < values.size() && i < errors.size(); ++i) {
        if (!(errors[i] > 0.0) || !std::isfinite(errors[i]) || !(values[i] > 0.0)) continue;
        xs.push_back(std::log(values[i]));
        ys.push_back(std::log(errors[i]));
    }
    if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = double(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double den = m * sxx - sx * sx;
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (m * sxy - sx * sy) / den;
}

bool monotone_decreasing(const std::vector<double>& errors, double floor)
{
    for (std::size_t i = 1; i < errors.size(); ++i) {
        if (!std::isfinite(errors[i]) || !std::isfinite(errors[i - 1])) return false;
        if (errors[i] > std::max(errors[i - 1], floor)) return false;
    }
    return true;
}

namespace {

void check_monotone_values(const std::vector<double>& v)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]) && !(v[i] < v[i - 1]))
            throw Error(ErrorKind::InvalidArgument, "sweep values must be strictly monotone");
    if (v.size() >= 3) {
        const bool up = v[1] > v[0];
        for (std::size_t i = 1; i < v.size(); ++i)
            if ((v[i] > v[i - 1]) != up) throw Error(ErrorKind::InvalidArgument, "sweep values must be strictly monotone");
    }
}

} // namespace

double degeneration_residual(const RSConfig& conf, Complex z)
{
    const Lattice& lat = conf.lat;
    if (lat.kind == LatticeKind::Trigonometric) {
        const CMatrix L = hasegawa_lax(conf, z).entries;
        return relative_max_error(L, hasegawa_lax(conf, z).entries);
    }
    if (!lat.is_elliptic()) throw Error(ErrorKind::InvalidArgument, "degeneration needs an elliptic or trigonometric lattice");

    TrivialTheta G;
    try {
        G = fit_trivial_gauge([&](Complex x) { return sigma(x, lat); },
                              [](Complex x) { return std::sin(pi * x); }, Complex(0.5, 0.1));
    } catch (const Error& e) {
        throw Error(ErrorKind::GaugeFitFailed, e.what());
    }
    if (!(G.residual < 1e-8)) throw Error(ErrorKind::GaugeFitFailed, "trivial theta gauge does not validate");

    const CMatrix Lell = hasegawa_lax(conf, z).entries;
    RSConfig trig = conf;
    trig.lat = Lattice::trigonometric();
    for (auto& x : trig.q) x *= pi;
    trig.hbar *= pi;
    trig.mu *= pi;
    trig.q_inf *= pi;
    trig.q_zero *= pi;
    const CMatrix Ltrig = hasegawa_lax(trig, pi * z).entries;

    const std::size_t n = conf.n();
    auto g = [&](Complex x) { return G.log_value(x); };
    CMatrix gauged(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t kp = 0; kp < n; ++kp) {
            Complex e = g(z + conf.hbar + conf.q[k] - conf.q[kp]) - g(z);
            for (std::size_t l = 0; l < n; ++l) {
                if (l == k) continue;
                e += g(conf.hbar + conf.q[l] - conf.q[kp]) - g(conf.q[l] - conf.q[k]);
            }
            gauged(k, kp) = std::exp(e) * Ltrig(k, kp);
        }
    return relative_max_error(gauged, Lell);
}

LimitSweep degeneration_sweep(const RSConfig& conf, const std::vector<double>& im_tau_values, Complex z)
{
    check_monotone_values(im_tau_values);
    LimitSweep out;
    out.parameter = SweepParameter::ImTau;
    out.values = im_tau_values;
    for (double t : im_tau_values) {
        try {
            if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "Im tau must be positive");
            RSConfig c = conf;
            c.lat = Lattice::elliptic(Complex(0.0, t));
            out.errors.push_back(degeneration_residual(c, z));
        } catch (const Error& e) {
            out.errors.push_back(std::numeric_limits<double>::quiet_NaN());
            out.failures.push_back("t=" + std::to_string(t) + ": " + e.what());
        }
    }
    out.fitted_order = log_log_slope(out.values, out.errors);
    return out;
}

double cm_limit_residual(const RSConfig& conf, const CMConfig& cmconf, double hbar, Complex z)
{
    if (hbar == 0.0) throw Error(ErrorKind::InvalidArgument, "hbar = 0 cannot be divided out");
    if (cmconf.q.size() != conf.q.size()) throw Error(ErrorKind::InvalidArgument, "configurations differ in size");
    RSConfig rs = conf;
    rs.lat = cmconf.lat;
    rs.q = cmconf.q;
    rs.hbar = hbar;
    rs.mu = hbar;
    rs.q_zero = rs.q_inf + double(rs.n()) * hbar;
    rs.P.resize(cmconf.n());
    for (std::size_t i = 0; i < cmconf.n(); ++i) rs.P[i] = hbar * cmconf.p[i];
    const auto n = Eigen::Index(rs.n());
    const CMatrix quotient = (composition_lax(rs, z).entries - CMatrix::Identity(n, n)) / hbar;
    const CMatrix Lcm = factorized_cm_lax(cmconf, z, conf.q_inf).entries;
    return (quotient - Lcm).norm() / Lcm.norm();
}

LimitSweep cm_limit_sweep(const RSConfig& conf, const CMConfig& cmconf, const std::vector<double>& hbar_values,
                          Complex z)
{
    check_monotone_values(hbar_values);
    LimitSweep out;
    out.parameter = SweepParameter::Hbar;
    out.values = hbar_values;
    for (double h : hbar_values) {
        try {
            out.errors.push_back(cm_limit_residual(conf, cmconf, h, z));
        } catch (const Error& e) {
            out.errors.push_back(std::numeric_limits<double>::quiet_NaN());
            out.failures.push_back("hbar=" + std::to_string(h) + ": " + e.what());
        }
    }
    out.fitted_order = log_log_slope(out.values, out.errors);
    return out;
}

double framing_constraint_check(const RSConfig& conf)
{
    return conf.lat.distance_to_lattice(conf.q_zero - conf.q_inf - double(conf.n()) * conf.hbar);
}

} // namespace rslax
