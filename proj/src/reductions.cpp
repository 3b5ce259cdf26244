#include "rslax/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rslax/linalg.hpp"

namespace rslax {

const char* to_string(ReductionKind k)
{
    switch (k) {
    case ReductionKind::RationalCM: return "rational_cm";
    case ReductionKind::TrigCM: return "trig_cm";
    case ReductionKind::RationalRS: return "rational_rs";
    case ReductionKind::TrigRS: return "trig_rs";
    }
    return "unknown";
}

CMatrix OrbitSpec::O(Eigen::Index n) const
{
    CMatrix M = CMatrix::Constant(n, n, g);
    M.diagonal().setZero();
    return M;
}

CMatrix OrbitSpec::O_prime() const
{
    const auto n = u.size();
    return t * CMatrix::Identity(n, n) + u * v.transpose();
}

Complex OrbitSpec::det_O_prime() const
{
    const auto n = u.size();
    return std::pow(t, double(n - 1)) * (t + v.cwiseProduct(u).sum());
}

CMatrix moment_map(const ReductionPair& pair)
{
    const CMatrix& X = pair.X;
    const CMatrix& Y = pair.Y;
    switch (pair.kind) {
    case ReductionKind::RationalCM: return X * Y - Y * X;
    case ReductionKind::TrigCM:
    case ReductionKind::RationalRS: return X * solve_left(X.transpose(), Y.transpose()).transpose() - Y;
    case ReductionKind::TrigRS: {
        const CMatrix XY = X * Y;
        // X Y X^-1 Y^-1 = XY (YX)^-1
        return solve_left((Y * X).transpose(), XY.transpose()).transpose();
    }
    }
    return {};
}

double moment_residual(const ReductionPair& pair, const CMatrix& target)
{
    const double n = double(pair.X.rows());
    return (moment_map(pair) - target).norm() / n;
}

namespace {

void check_lengths(std::size_t a, std::size_t b, const char* what)
{
    if (a == 0 || a != b) throw Error(ErrorKind::InvalidArgument, std::string(what) + ": length mismatch");
}

CMatrix diag_of(const std::vector<Complex>& v)
{
    CMatrix D = CMatrix::Zero(Eigen::Index(v.size()), Eigen::Index(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) D(Eigen::Index(i), Eigen::Index(i)) = v[i];
    return D;
}

} // namespace

ReductionPair solve_rational_cm(const std::vector<Complex>& q, const std::vector<Complex>& p, const OrbitSpec& orbit)
{
    check_lengths(q.size(), p.size(), "solve_rational_cm");
    const std::size_t n = q.size();
    ReductionPair out;
    out.kind = ReductionKind::RationalCM;
    out.X = diag_of(q);
    out.Y = diag_of(p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const Complex d = q[i] - q[j];
            if (std::abs(d) <= 1e-6) throw Error(ErrorKind::DegenerateConfiguration, "positions coincide");
            out.Y(Eigen::Index(i), Eigen::Index(j)) = orbit.g / d;
        }
    return out;
}

ReductionPair solve_rational_rs(const std::vector<Complex>& theta, const OrbitSpec& orbit,
                                const std::vector<Complex>& diag_free)
{
    check_lengths(theta.size(), diag_free.size(), "solve_rational_rs");
    const std::size_t n = theta.size();
    ReductionPair out;
    out.kind = ReductionKind::RationalRS;
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(theta[i]);
    out.X = diag_of(x);
    out.Y = diag_of(diag_free);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const Complex d = std::exp(theta[i] - theta[j]) - 1.0;
            if (std::abs(d) <= 1e-6)
                throw Error(ErrorKind::DegenerateConfiguration, "exp(theta_i - theta_j) is too close to 1");
            out.Y(Eigen::Index(i), Eigen::Index(j)) = orbit.g / d;
        }
    return out;
}

TrigCMSolution solve_trig_cm(const std::vector<Complex>& q, const OrbitSpec& orbit, const std::vector<Complex>& gauge)
{
    check_lengths(q.size(), gauge.size(), "solve_trig_cm");
    const std::size_t n = q.size();
    const auto N = Eigen::Index(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(q[i] - q[j]) <= 1e-6) throw Error(ErrorKind::DegenerateConfiguration, "positions coincide");
    for (Complex c : gauge)
        if (std::abs(c) == 0.0) throw Error(ErrorKind::NoSolution, "a zero gauge entry makes X singular");

    TrigCMSolution sol;
    sol.pair.kind = ReductionKind::TrigCM;
    sol.pair.Y = diag_of(q);
    const Complex g = orbit.g;
    if (g == Complex{}) {
        sol.pair.X = diag_of(gauge);
        sol.moment = CMatrix::Zero(N, N);
        return sol;
    }

    // X_ij (y_j - y_i + g) = w_j with w = X^T b; consistency fixes b
    CMatrix K(N, N);
    for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < N; ++i) {
            const Complex d = q[std::size_t(j)] - q[std::size_t(i)] + g;
            if (std::abs(d) < 1e-9)
                throw Error(ErrorKind::NoSolution, "q_j - q_i + g vanishes, the moment equation has no solution");
            K(j, i) = 1.0 / d;
        }
    CVector b;
    try {
        b = solve_left(K, CVector::Ones(N));
    } catch (const Error&) {
        throw Error(ErrorKind::NoSolution, "the orbit consistency system is singular");
    }
    sol.pair.X.resize(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j) sol.pair.X(i, j) = g * gauge[std::size_t(j)] * K(j, i);
    sol.moment = -g * CMatrix::Identity(N, N) + CVector::Ones(N) * b.transpose();
    if (is_numerically_singular(sol.pair.X)) throw Error(ErrorKind::NoSolution, "the solved X is singular");
    return sol;
}

CVector trig_rs_consistent_v(const std::vector<Complex>& theta, const CVector& u, Complex t)
{
    const auto N = Eigen::Index(theta.size());
    if (u.size() != N) throw Error(ErrorKind::InvalidArgument, "u has the wrong length");
    if (std::abs(1.0 - t) < 1e-12)
        throw Error(ErrorKind::NoSolution, "t = 1 forces u_j (v^T Y)_j = 0 on the diagonal");
    CMatrix M(N, N);
    for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < N; ++i)
            M(j, i) = u(i) / (std::exp(theta[std::size_t(i)] - theta[std::size_t(j)]) - t);
    try {
        return solve_left(M, CVector::Ones(N));
    } catch (const Error&) {
        throw Error(ErrorKind::NoSolution, "the rank-one consistency system is singular");
    }
}

ReductionPair solve_trig_rs(const std::vector<Complex>& theta, const OrbitSpec& orbit,
                            const std::vector<Complex>& diag_free)
{
    check_lengths(theta.size(), diag_free.size(), "solve_trig_rs");
    const std::size_t n = theta.size();
    const auto N = Eigen::Index(n);
    if (orbit.u.size() != N || orbit.v.size() != N) throw Error(ErrorKind::InvalidArgument, "u, v have the wrong length");
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(theta[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(x[i] / x[j] - 1.0) <= 1e-6)
                throw Error(ErrorKind::DegenerateConfiguration, "exp(theta_i) values coincide");
    if (std::abs(orbit.det_O_prime()) < 1e-14) throw Error(ErrorKind::NoSolution, "O' is singular");

    ReductionPair out;
    out.kind = ReductionKind::TrigRS;
    out.X = diag_of(x);
    const Complex t = orbit.t;

    if (orbit.u.norm() == 0.0) {
        if (std::abs(t - 1.0) > 1e-12)
            throw Error(ErrorKind::NoSolution, "with u = 0 the moment map must be the identity");
        out.Y = diag_of(diag_free);
        if (is_numerically_singular(out.Y)) throw Error(ErrorKind::SingularY, "Y is singular");
        return out;
    }
    if (std::abs(1.0 - t) < 1e-12)
        throw Error(ErrorKind::NoSolution, "t = 1 with u != 0 forces a zero diagonal in the rank-one relation");

    for (std::size_t j = 0; j < n; ++j) {
        Complex s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += orbit.u(Eigen::Index(i)) * orbit.v(Eigen::Index(i)) / (x[i] / x[j] - t);
        if (std::abs(s - 1.0) > 1e-9)
            throw Error(ErrorKind::NoSolution, "rank-one consistency condition fails for column " + std::to_string(j));
    }
    CVector w(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        if (std::abs(orbit.u(i)) < 1e-300) throw Error(ErrorKind::NoSolution, "u has a zero entry");
        w(i) = diag_free[std::size_t(i)] * (1.0 - t) / orbit.u(i);
    }
    out.Y.resize(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j)
            out.Y(i, j) = orbit.u(i) * w(j) / (x[std::size_t(i)] / x[std::size_t(j)] - t);
    if (is_numerically_singular(out.Y)) throw Error(ErrorKind::SingularY, "Y is singular");
    return out;
}

double orbit_O_distance(const CMatrix& M, Complex g)
{
    const auto n = M.rows();
    if (g == Complex{} || n == 1) return M.norm();
    const CMatrix S = M + g * CMatrix::Identity(n, n);
    Eigen::JacobiSVD<CMatrix> svd(S);
    const auto& sv = svd.singularValues();
    const double rank_defect = sv(1) / std::max(1.0, sv(0));
    return std::max(rank_defect, std::abs(M.trace()));
}

namespace {

struct Eigendata {
    std::vector<Complex> values;
    CMatrix vectors;
};

Eigendata sorted_eigendata(const CMatrix& A)
{
    Eigen::ComplexEigenSolver<CMatrix> es(A, true);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::NonDiagonalizable, "eigen decomposition failed");
    const auto n = A.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const auto& ev = es.eigenvalues();
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
        return ev(a).imag() < ev(b).imag();
    });
    Eigendata d;
    d.vectors.resize(n, n);
    double scale = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        d.values.push_back(ev(order[std::size_t(k)]));
        d.vectors.col(k) = es.eigenvectors().col(order[std::size_t(k)]);
        scale = std::max(scale, std::abs(d.values.back()));
    }
    for (std::size_t i = 0; i < d.values.size(); ++i)
        for (std::size_t j = i + 1; j < d.values.size(); ++j)
            if (std::abs(d.values[i] - d.values[j]) < 1e-8 * scale)
                throw Error(ErrorKind::RepeatedEigenvalues, "eigenvalues are not distinct");
    Eigen::JacobiSVD<CMatrix> svd(d.vectors);
    const auto& sv = svd.singularValues();
    if (!(sv(n - 1) > 1e-12 * sv(0))) throw Error(ErrorKind::NonDiagonalizable, "eigenvector matrix is singular");
    return d;
}

// T -> T diag(T^{-1} 1) so that the conjugated moment keeps the all-ones column
CMatrix torus_rescale(const CMatrix& T)
{
    const auto n = T.rows();
    const CVector d = solve_left(T, CVector::Ones(n));
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(d(i)) < 1e-12) return T;
    return T * d.asDiagonal();
}

} // namespace

ReductionPair dualize(const ReductionPair& pair)
{
    const auto n = pair.X.rows();
    if (pair.Y.rows() != n || pair.X.cols() != n || pair.Y.cols() != n)
        throw Error(ErrorKind::InvalidArgument, "pair matrices must be square and of equal size");
    ReductionPair out;
    out.kind = pair.kind;
    switch (pair.kind) {
    case ReductionKind::RationalCM:
    case ReductionKind::TrigRS: {
        const CMatrix A = pair.Y.transpose();
        const CMatrix B = pair.X.transpose();
        const auto ed = sorted_eigendata(A);
        const CMatrix T = pair.kind == ReductionKind::RationalCM ? torus_rescale(ed.vectors) : ed.vectors;
        out.X = diag_of(ed.values);
        out.Y = solve_left(T, B * T);
        break;
    }
    case ReductionKind::RationalRS: {
        const auto ed = sorted_eigendata(pair.Y);
        const CMatrix T = torus_rescale(ed.vectors);
        out.X = solve_left(T, pair.X * T);
        out.Y = diag_of(ed.values);
        out.kind = ReductionKind::TrigCM;
        break;
    }
    case ReductionKind::TrigCM: {
        const auto ed = sorted_eigendata(pair.X);
        const CMatrix T = torus_rescale(ed.vectors);
        out.X = diag_of(ed.values);
        out.Y = solve_left(T, pair.Y * T);
        out.kind = ReductionKind::RationalRS;
        break;
    }
    }
    return out;
}

std::vector<Complex> positions(const ReductionPair& pair)
{
    const CVector d = pair.kind == ReductionKind::TrigCM ? CVector(pair.Y.diagonal()) : CVector(pair.X.diagonal());
    return std::vector<Complex>(d.data(), d.data() + d.size());
}

} // namespace rslax
