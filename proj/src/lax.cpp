#include "rslax/lax.hpp"

#include <cmath>

#include "rslax/linalg.hpp"

namespace rslax {

RSConfig RSConfig::make(std::vector<Complex> q, std::vector<Complex> P, Complex hbar, const Lattice& lat,
                        Complex q_inf)
{
    RSConfig c;
    c.q = std::move(q);
    c.P = std::move(P);
    c.hbar = hbar;
    c.mu = hbar;
    c.lat = lat;
    c.q_inf = q_inf;
    c.q_zero = q_inf + double(c.q.size()) * hbar;
    return c;
}

namespace {

void check_distinct(const std::vector<Complex>& q, const Lattice& lat)
{
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j)
            if (lat.distance_to_lattice(q[i] - q[j]) <= kDistinctness)
                throw Error(ErrorKind::DegenerateConfiguration, "positions coincide modulo the lattice");
}

void require_elliptic(const Lattice& lat, const char* what)
{
    if (!lat.is_elliptic()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " needs an elliptic lattice");
}

void require_off_lattice(Complex z, const Lattice& lat, const char* what)
{
    if (lat.distance_to_lattice(z) < kPoleTolerance)
        throw Error(ErrorKind::PoleAtLattice, std::string(what) + " hits a lattice point");
}

Complex mean(const std::vector<Complex>& v)
{
    Complex s = 0.0;
    for (Complex x : v) s += x;
    return s / double(v.size());
}

} // namespace

void RSConfig::validate() const
{
    if (q.empty()) throw Error(ErrorKind::InvalidArgument, "at least one particle is required");
    if (P.size() != q.size()) throw Error(ErrorKind::InvalidArgument, "q and P lengths differ");
    check_distinct(q, lat);
}

void CMConfig::validate() const
{
    if (q.empty()) throw Error(ErrorKind::InvalidArgument, "at least one particle is required");
    if (p.size() != q.size()) throw Error(ErrorKind::InvalidArgument, "q and p lengths differ");
    check_distinct(q, lat);
}

SpinFraming SpinFraming::unit(std::size_t n)
{
    SpinFraming s;
    const auto N = Eigen::Index(n);
    s.U0 = CMatrix::Ones(N, 1);
    s.V0 = CMatrix::Ones(1, N);
    s.Uinf = CMatrix::Ones(N, 1);
    s.Vinf = CMatrix::Ones(1, N);
    return s;
}

CMatrix SpinFraming::coupling() const
{
    const CMatrix a = U0 * V0;
    const CMatrix b = Uinf * Vinf;
    return a.cwiseProduct(b.transpose());
}

Complex intertwining_vector(const std::vector<Complex>& lam, int j, std::size_t k, Complex z, const Lattice& lat)
{
    require_elliptic(lat, "intertwining_vector");
    const double n = double(lam.size());
    if (k >= lam.size()) throw Error(ErrorKind::InvalidArgument, "particle index out of range");
    const Complex pairing = lam[k] - mean(lam);
    const ThetaCharacteristic ch{0.5 - double(j) / n, 0.5};
    return theta_char(ch, (z - n * pairing) / lat.omega1, n * lat.tau);
}

SpectralMatrix xi_matrix(const RSConfig& conf, Complex z)
{
    require_elliptic(conf.lat, "xi_matrix");
    const std::size_t n = conf.n();
    const Complex s0 = 0.5 * double(n + 1) * conf.lat.omega1;
    SpectralMatrix out;
    out.lambda = z;
    out.entries.resize(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            out.entries(j, k) = intertwining_vector(conf.q, int(j), k, z - conf.q_inf + s0, conf.lat);
    return out;
}

SpectralMatrix xi_sigma_matrix(const RSConfig& conf, Complex z)
{
    SpectralMatrix out = xi_matrix(conf, z);
    const std::size_t n = conf.n();
    const double nd = double(n);
    const Complex qm = mean(conf.q);
    const Complex Z = (z - conf.q_inf) / conf.lat.omega1;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex x = Z - nd * (conf.q[k] - qm) / conf.lat.omega1;
        out.entries.col(k) *= std::exp(conf.lat.eta1_unit / nd * x * x);
    }
    return out;
}

SpectralMatrix hasegawa_lax(const RSConfig& conf, Complex z)
{
    conf.validate();
    const auto& lat = conf.lat;
    require_off_lattice(z, lat, "hasegawa_lax spectral point");
    const std::size_t n = conf.n();
    const Complex sz = sigma(z, lat);

    CMatrix num(n, n), b(n, n), c(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t kp = 0; kp < n; ++kp) {
            num(k, kp) = sigma(z + conf.hbar + conf.q[k] - conf.q[kp], lat);
            b(k, kp) = sigma(conf.hbar + conf.q[k] - conf.q[kp], lat);
            c(k, kp) = (k == kp) ? Complex(1.0) : sigma(conf.q[k] - conf.q[kp], lat);
        }

    SpectralMatrix out;
    out.lambda = z;
    out.entries.resize(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex ep = std::exp(conf.P[k]);
        for (std::size_t kp = 0; kp < n; ++kp) {
            Complex v = num(k, kp) / sz;
            for (std::size_t l = 0; l < n; ++l)
                if (l != k) v *= b(l, kp) / c(l, k);
            out.entries(k, kp) = v * ep;
        }
    }
    return out;
}

SpectralMatrix composition_lax(const RSConfig& conf, Complex z)
{
    conf.validate();
    const double n = double(conf.n());
    const Complex zp = z + conf.q_inf;
    const CMatrix A = xi_sigma_matrix(conf, zp).entries;
    const CMatrix B = xi_sigma_matrix(conf, zp + n * conf.hbar).entries;
    SpectralMatrix out;
    out.lambda = z;
    out.entries = solve_left(A, B);
    for (std::size_t k = 0; k < conf.n(); ++k) out.entries.row(k) *= std::exp(conf.P[k]);
    return out;
}

namespace {

// f(x) = sqrt(sigma(mu)^2 (wp(mu) - wp(x)))
Complex root_factor(Complex x, Complex mu, const Lattice& lat, bool& near_cut)
{
    const Complex s = sigma(mu, lat);
    const Complex radicand = s * s * (wp(mu, lat) - wp(x, lat));
    if (radicand.real() < 0.0 && std::abs(radicand.imag()) < 1e-8 * std::abs(radicand)) near_cut = true;
    return std::sqrt(radicand);
}

Complex absorbed_factor(Complex x, Complex mu, const Lattice& lat)
{
    return sigma(x - mu, lat) / sigma(x, lat);
}

} // namespace

RuijsenaarsLax ruijsenaars_lax(const RSConfig& conf, const LaxParams& params, Complex lambda, RootNormalization norm)
{
    (void)params;
    conf.validate();
    const auto& lat = conf.lat;
    const Complex mu = conf.mu;
    require_off_lattice(lambda, lat, "ruijsenaars_lax spectral parameter");
    require_off_lattice(mu, lat, "ruijsenaars_lax mu");
    const std::size_t n = conf.n();

    RuijsenaarsLax out;
    out.L.lambda = lambda;
    out.L.entries.resize(n, n);
    const Complex sl = sigma(lambda, lat);
    const Complex sm = sigma(mu, lat);
    for (std::size_t i = 0; i < n; ++i) {
        Complex pref = std::exp(conf.P[i]);
        for (std::size_t l = 0; l < n; ++l) {
            if (l == i) continue;
            const Complex x = conf.q[i] - conf.q[l];
            pref *= (norm == RootNormalization::Principal) ? root_factor(x, mu, lat, out.branch_warning)
                                                           : absorbed_factor(x, mu, lat);
        }
        for (std::size_t j = 0; j < n; ++j) {
            const Complex x = conf.q[i] - conf.q[j];
            require_off_lattice(x + mu, lat, "ruijsenaars_lax q_i - q_j + mu");
            out.L.entries(i, j) = pref * sigma(x + lambda, lat) * sm / (sl * sigma(x + mu, lat));
        }
    }
    return out;
}

std::vector<Complex> ruijsenaars_to_hasegawa_rapidities(const RSConfig& conf, RootNormalization norm)
{
    conf.validate();
    const auto& lat = conf.lat;
    const Complex mu = conf.mu;
    const std::size_t n = conf.n();
    std::vector<Complex> P(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex shift = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            if (l == i) continue;
            const Complex ql = conf.q[l] - conf.q[i];
            Complex factor = sigma(ql, lat) / sigma(mu + ql, lat);
            if (norm == RootNormalization::Principal) {
                bool unused = false;
                factor *= root_factor(-ql, mu, lat, unused);
            } else {
                factor *= absorbed_factor(-ql, mu, lat);
            }
            shift += std::log(factor);
        }
        P[i] = conf.P[i] + shift;
    }
    return P;
}

SpectralMatrix krichever_lax(const RSConfig& conf, Complex z, Complex lambda)
{
    conf.validate();
    const auto& lat = conf.lat;
    const Complex mu = conf.mu;
    if (std::abs(mu) == 0.0) throw Error(ErrorKind::ZeroMu, "krichever_lax needs mu != 0");
    require_off_lattice(lambda + mu, lat, "krichever_lax lambda + mu");
    require_off_lattice(z - mu, lat, "krichever_lax z - mu");
    require_off_lattice(z + mu, lat, "krichever_lax z + mu");
    const std::size_t n = conf.n();
    const Complex log_bracket = std::log(sigma(z - mu, lat) / sigma(z + mu, lat));
    const Complex slm = sigma(lambda + mu, lat);
    SpectralMatrix out;
    out.lambda = lambda;
    out.entries.resize(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex x = conf.q[i] - conf.q[j];
            require_off_lattice(x - mu, lat, "krichever_lax q_i - q_j - mu");
            const Complex power = std::exp((x - mu) / (2.0 * mu) * log_bracket);
            out.entries(i, j) = sigma(lambda + x, lat) / (slm * sigma(x - mu, lat)) * power;
        }
    return out;
}

SpectralMatrix spin_lax(const RSConfig& conf, const SpinFraming& spin, Complex z)
{
    conf.validate();
    const std::size_t n = conf.n();
    const auto N = Eigen::Index(n);
    if (spin.U0.rows() != N || spin.Uinf.rows() != N || spin.V0.cols() != N || spin.Vinf.cols() != N ||
        spin.V0.rows() != spin.U0.cols() || spin.Vinf.rows() != spin.Uinf.cols())
        throw Error(ErrorKind::InvalidArgument, "spin framing dimensions do not match the configuration");
    RSConfig spinless = conf;
    std::fill(spinless.P.begin(), spinless.P.end(), Complex(0.0));
    // u = n hbar enters only through u/n = hbar
    SpectralMatrix out = hasegawa_lax(spinless, z);
    out.entries = out.entries.cwiseProduct(spin.coupling());
    return out;
}

SpectralMatrix cm_lax(const CMConfig& conf, std::optional<Complex> lambda)
{
    conf.validate();
    const auto& lat = conf.lat;
    const std::size_t n = conf.n();
    if (lambda && std::abs(*lambda) == 0.0) throw Error(ErrorKind::ZeroLambda, "cm_lax needs lambda != 0");
    if (!lambda && lat.kind != LatticeKind::Rational)
        throw Error(ErrorKind::InvalidArgument, "dropping the spectral term is defined for the rational kind");
    if (lambda) require_off_lattice(*lambda, lat, "cm_lax spectral parameter");
    SpectralMatrix out;
    out.lambda = lambda.value_or(Complex(std::numeric_limits<double>::infinity(), 0.0));
    out.entries.resize(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                out.entries(i, j) = conf.p[i];
                continue;
            }
            const Complex x = conf.q[i] - conf.q[j];
            if (lat.kind == LatticeKind::Rational) {
                out.entries(i, j) = lambda ? conf.g * (1.0 / x - 1.0 / *lambda) : conf.g / x;
            } else {
                out.entries(i, j) = conf.g * sigma(x - *lambda, lat) / (sigma(x, lat) * sigma(-*lambda, lat));
            }
        }
    return out;
}

SpectralMatrix factorized_cm_lax(const CMConfig& conf, Complex z, Complex q_inf)
{
    conf.validate();
    require_elliptic(conf.lat, "factorized_cm_lax");
    const std::size_t n = conf.n();
    RSConfig rs = RSConfig::make(conf.q, std::vector<Complex>(n, 0.0), 0.0, conf.lat, q_inf);
    const Complex zp = z + q_inf;
    const double h = 1e-6;
    const CMatrix A = xi_sigma_matrix(rs, zp).entries;
    const CMatrix D = (xi_sigma_matrix(rs, zp + h).entries - xi_sigma_matrix(rs, zp - h).entries) / (2.0 * h);
    SpectralMatrix out;
    out.lambda = z;
    out.entries = double(n) * solve_left(A, D);
    for (std::size_t i = 0; i < n; ++i) out.entries(i, i) += conf.p[i];
    return out;
}

Complex cm_hamiltonian(const CMConfig& conf)
{
    conf.validate();
    Complex h = 0.0;
    for (Complex p : conf.p) h += 0.5 * p * p;
    for (std::size_t i = 0; i < conf.n(); ++i)
        for (std::size_t j = i + 1; j < conf.n(); ++j) h += conf.g * conf.g * wp(conf.q[i] - conf.q[j], conf.lat);
    return h;
}

} // namespace rslax
