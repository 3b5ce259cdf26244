#include "rslax/dynamics.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "rslax/linalg.hpp"

namespace rslax {

const char* to_string(HamiltonianFamily f)
{
    switch (f) {
    case HamiltonianFamily::TracePower: return "trace_power";
    case HamiltonianFamily::RSCosh: return "rs_cosh";
    case HamiltonianFamily::HitchinComponent: return "hitchin";
    }
    return "unknown";
}

const char* to_string(LaxFamily f) { return f == LaxFamily::Hasegawa ? "hasegawa" : "composition"; }

double Trajectory::max_spectral_drift() const
{
    double m = 0.0;
    for (double d : spectral_drift) m = std::max(m, d);
    return m;
}

double Trajectory::max_energy_drift() const
{
    double m = 0.0;
    for (double d : energy_drift) m = std::max(m, d);
    return m;
}

PhasePoint phase_point(const RSConfig& conf) { return {conf.q, conf.P}; }

RSConfig with_point(const RSConfig& conf, const PhasePoint& point)
{
    RSConfig c = conf;
    c.q = point.q;
    c.P = point.p;
    return c;
}

CMatrix hamiltonian_lax(const HamiltonianSpec& spec, const RSConfig& conf)
{
    switch (spec.family) {
    case HamiltonianFamily::RSCosh: return ruijsenaars_lax(conf, LaxParams{}, spec.eval_z).L.entries;
    case HamiltonianFamily::HitchinComponent: return composition_lax(conf, spec.eval_z).entries;
    case HamiltonianFamily::TracePower: break;
    }
    return spec.lax == LaxFamily::Hasegawa ? hasegawa_lax(conf, spec.eval_z).entries
                                           : composition_lax(conf, spec.eval_z).entries;
}

Complex hamiltonian(const HamiltonianSpec& spec, const RSConfig& conf)
{
    if (spec.i < 1) throw Error(ErrorKind::InvalidArgument, "Hamiltonian index must be at least 1");
    const CMatrix L = hamiltonian_lax(spec, conf);
    switch (spec.family) {
    case HamiltonianFamily::RSCosh: {
        const CMatrix inv = solve_left(L, CMatrix::Identity(L.rows(), L.cols()));
        return L.trace() + inv.trace();
    }
    case HamiltonianFamily::HitchinComponent: {
        CMatrix M = L;
        for (int k = 0; k < spec.i; ++k) M = M * L;
        return M.trace() / double(spec.i + 1);
    }
    case HamiltonianFamily::TracePower: break;
    }
    CMatrix M = L;
    for (int k = 1; k < spec.i; ++k) M = M * L;
    return M.trace();
}

namespace {

void check_collision(const std::vector<Complex>& q, const Lattice& lat, double h)
{
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j)
            if (lat.distance_to_lattice(q[i] - q[j]) < 10.0 * h)
                throw Error(ErrorKind::CollisionImminent, "particles " + std::to_string(i) + " and " +
                                                              std::to_string(j) + " are about to collide");
}

using StateFunction = std::function<Complex(const std::vector<Complex>&, const std::vector<Complex>&)>;

Gradient fd_gradient(const StateFunction& H, const std::vector<Complex>& q, const std::vector<Complex>& p,
                     const FdOptions& fd)
{
    const std::size_t n = q.size();
    Gradient g;
    g.dq.resize(n);
    g.dp.resize(n);
    auto partial = [&](bool on_q, std::size_t i, Complex step) {
        auto qa = q, pa = p, qb = q, pb = p;
        (on_q ? qa : pa)[i] += step;
        (on_q ? qb : pb)[i] -= step;
        return (H(qa, pa) - H(qb, pb)) / (2.0 * step);
    };
    for (int which = 0; which < 2; ++which) {
        const bool on_q = which == 0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex d = partial(on_q, i, fd.h);
            if (fd.wirtinger) {
                const Complex di = partial(on_q, i, Complex(0.0, fd.h));
                g.cr_defect = std::max(g.cr_defect, std::abs(d - di));
                d = 0.5 * (d + di);
            }
            (on_q ? g.dq : g.dp)[i] = d;
        }
    }
    return g;
}

StateFunction state_hamiltonian(const HamiltonianSpec& spec, const RSConfig& conf)
{
    return [&spec, &conf](const std::vector<Complex>& q, const std::vector<Complex>& p) {
        return hamiltonian(spec, with_point(conf, {q, p}));
    };
}

using Flow = std::function<std::vector<Complex>(const std::vector<Complex>&)>;

std::vector<Complex> axpy(const std::vector<Complex>& x, Complex a, const std::vector<Complex>& y)
{
    std::vector<Complex> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
    return out;
}

std::vector<Complex> rk4_step(const Flow& f, const std::vector<Complex>& y, double dt)
{
    const auto k1 = f(y);
    const auto k2 = f(axpy(y, 0.5 * dt, k1));
    const auto k3 = f(axpy(y, 0.5 * dt, k2));
    const auto k4 = f(axpy(y, dt, k3));
    std::vector<Complex> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

struct Monitor {
    const HamiltonianSpec& spec;
    const RSConfig& conf;
    std::vector<Complex> tracked;
    std::vector<Complex> initial;
    Complex energy0{};

    Monitor(const HamiltonianSpec& s, const RSConfig& c, const PhasePoint& start) : spec(s), conf(c)
    {
        const RSConfig c0 = with_point(conf, start);
        initial = sorted_values(eigenvalues(hamiltonian_lax(spec, c0)));
        tracked = initial;
        energy0 = hamiltonian(spec, c0);
    }

    void record(Trajectory& traj, double t, const PhasePoint& point)
    {
        const RSConfig c = with_point(conf, point);
        const auto ev = sorted_values(eigenvalues(hamiltonian_lax(spec, c)));
        tracked = match_to(tracked, ev);
        double drift = 0.0;
        for (std::size_t k = 0; k < tracked.size(); ++k) drift = std::max(drift, std::abs(tracked[k] - initial[k]));
        traj.times.push_back(t);
        traj.points.push_back(point);
        traj.spectral_drift.push_back(drift);
        traj.energy_drift.push_back(std::abs(hamiltonian(spec, c) - energy0));
    }
};

void check_steps(double t_end, double dt)
{
    if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
    if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
}

Trajectory run(const HamiltonianSpec& spec, const PhasePoint& start, const RSConfig& conf, double t_end, double dt,
               const Flow& flow, const std::function<std::vector<Complex>(const PhasePoint&)>& pack,
               const std::function<PhasePoint(const std::vector<Complex>&)>& unpack)
{
    check_steps(t_end, dt);
    Trajectory traj;
    Monitor monitor(spec, conf, start);
    monitor.record(traj, 0.0, start);
    const long steps = std::lround(t_end / dt);
    std::vector<Complex> y = pack(start);
    for (long s = 1; s <= steps; ++s) {
        try {
            y = rk4_step(flow, y, dt);
            monitor.record(traj, double(s) * dt, unpack(y));
        } catch (const Error& e) {
            traj.aborted = true;
            traj.abort_reason = e.what();
            break;
        }
    }
    return traj;
}

} // namespace

Gradient hamiltonian_gradient(const HamiltonianSpec& spec, const PhasePoint& point, const RSConfig& conf,
                              const FdOptions& fd)
{
    check_collision(point.q, conf.lat, fd.h);
    return fd_gradient(state_hamiltonian(spec, conf), point.q, point.p, fd);
}

VectorField hamiltonian_vector_field(const HamiltonianSpec& spec, const PhasePoint& point, const RSConfig& conf,
                                     const FdOptions& fd)
{
    const Gradient g = hamiltonian_gradient(spec, point, conf, fd);
    VectorField v;
    v.dq = g.dp;
    v.dp.resize(g.dq.size());
    for (std::size_t i = 0; i < g.dq.size(); ++i) v.dp[i] = -g.dq[i];
    return v;
}

Trajectory integrate(const HamiltonianSpec& spec, const PhasePoint& start, const RSConfig& conf, double t_end,
                     double dt, const FdOptions& fd)
{
    const std::size_t n = start.q.size();
    auto pack = [](const PhasePoint& pt) {
        std::vector<Complex> y = pt.q;
        y.insert(y.end(), pt.p.begin(), pt.p.end());
        return y;
    };
    auto unpack = [n](const std::vector<Complex>& y) {
        return PhasePoint{{y.begin(), y.begin() + long(n)}, {y.begin() + long(n), y.end()}};
    };
    auto flow = [&](const std::vector<Complex>& y) {
        const VectorField v = hamiltonian_vector_field(spec, unpack(y), conf, fd);
        std::vector<Complex> out = v.dq;
        out.insert(out.end(), v.dp.begin(), v.dp.end());
        return out;
    };
    return run(spec, start, conf, t_end, dt, flow, pack, unpack);
}

Trajectory integrate_theta_coordinates(const HamiltonianSpec& spec, const PhasePoint& start, const RSConfig& conf,
                                       double t_end, double dt, const FdOptions& fd)
{
    const std::size_t n = start.q.size();
    std::vector<Complex> theta0(n);
    for (std::size_t i = 0; i < n; ++i) theta0[i] = std::exp(start.p[i]);
    // p = p0 + log(theta / theta0) keeps the branch attached to the start value
    auto to_p = [&](const std::vector<Complex>& theta) {
        std::vector<Complex> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = start.p[i] + std::log(theta[i] / theta0[i]);
        return p;
    };
    auto pack = [](const PhasePoint& pt) {
        std::vector<Complex> y = pt.q;
        for (Complex p : pt.p) y.push_back(std::exp(p));
        return y;
    };
    auto unpack = [n, &to_p](const std::vector<Complex>& y) {
        return PhasePoint{{y.begin(), y.begin() + long(n)}, to_p({y.begin() + long(n), y.end()})};
    };
    StateFunction H_theta = [&](const std::vector<Complex>& q, const std::vector<Complex>& theta) {
        return hamiltonian(spec, with_point(conf, {q, to_p(theta)}));
    };
    auto flow = [&](const std::vector<Complex>& y) {
        const std::vector<Complex> q(y.begin(), y.begin() + long(n));
        const std::vector<Complex> theta(y.begin() + long(n), y.end());
        check_collision(q, conf.lat, fd.h);
        // the theta step is relative so that it matches the scale of theta
        std::vector<Complex> dq(n), dtheta(n);
        const Gradient gq = fd_gradient(H_theta, q, theta, FdOptions{fd.h, false});
        for (std::size_t i = 0; i < n; ++i) {
            auto tp = theta, tm = theta;
            const Complex step = fd.h * theta[i];
            tp[i] += step;
            tm[i] -= step;
            const Complex dH_dtheta = (H_theta(q, tp) - H_theta(q, tm)) / (2.0 * step);
            dq[i] = theta[i] * dH_dtheta;
            dtheta[i] = -theta[i] * gq.dq[i];
        }
        std::vector<Complex> out = dq;
        out.insert(out.end(), dtheta.begin(), dtheta.end());
        return out;
    };
    return run(spec, start, conf, t_end, dt, flow, pack, unpack);
}

Complex poisson_bracket(const HamiltonianSpec& a, const HamiltonianSpec& b, const PhasePoint& point,
                        const RSConfig& conf, const FdOptions& fd)
{
    const Gradient ga = hamiltonian_gradient(a, point, conf, fd);
    const Gradient gb = hamiltonian_gradient(b, point, conf, fd);
    Complex s = 0.0;
    for (std::size_t i = 0; i < ga.dq.size(); ++i) s += ga.dq[i] * gb.dp[i] - ga.dp[i] * gb.dq[i];
    return s;
}

double richardson_ratio(const HamiltonianSpec& spec, const PhasePoint& point, const RSConfig& conf, double h0)
{
    auto flat = [&](double h) {
        const Gradient g = hamiltonian_gradient(spec, point, conf, FdOptions{h, false});
        std::vector<Complex> v = g.dq;
        v.insert(v.end(), g.dp.begin(), g.dp.end());
        return v;
    };
    const auto d1 = flat(h0);
    const auto d2 = flat(h0 / 2.0);
    const auto d4 = flat(h0 / 4.0);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d1.size(); ++i) {
        num += std::norm(d1[i] - d2[i]);
        den += std::norm(d2[i] - d4[i]);
    }
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(num / den);
}

} // namespace rslax
