#include "rslax/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rslax {

double max_abs(const CMatrix& M)
{
    double m = 0.0;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) m = std::max(m, std::abs(M(i, j)));
    return m;
}

double relative_max_error(const CMatrix& A, const CMatrix& B, double floor)
{
    return max_abs(A - B) / std::max(max_abs(B), floor);
}

Complex determinant(const CMatrix& M)
{
    if (M.rows() == 0) return 1.0;
    return M.partialPivLu().determinant();
}

bool is_numerically_singular(const CMatrix& M)
{
    const auto n = M.rows();
    if (n == 0) return false;
    const double scale = max_abs(M);
    if (scale == 0.0) return true;
    // compare in the scaled matrix to avoid under/overflow of scale^n
    const Complex d = determinant(M / scale);
    return !(std::abs(d) >= 1e-12) || !is_finite(d);
}

CMatrix solve_left(const CMatrix& A, const CMatrix& B)
{
    if (is_numerically_singular(A)) throw Error(ErrorKind::SingularMatrix, "matrix is numerically singular");
    return A.partialPivLu().solve(B);
}

CVector eigenvalues(const CMatrix& M)
{
    Eigen::ComplexEigenSolver<CMatrix> es(M, false);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::NonConvergent, "eigenvalue iteration failed");
    return es.eigenvalues();
}

std::vector<Complex> sorted_values(std::vector<Complex> v)
{
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

std::vector<Complex> sorted_values(const CVector& v)
{
    return sorted_values(std::vector<Complex>(v.data(), v.data() + v.size()));
}

std::vector<Complex> match_to(const std::vector<Complex>& ref, const std::vector<Complex>& next)
{
    const std::size_t n = ref.size();
    if (next.size() != n) throw Error(ErrorKind::InvalidArgument, "eigenvalue count changed");
    std::vector<Complex> out(n);
    std::vector<bool> used_ref(n, false), used_next(n, false);
    // repeatedly take the globally closest remaining pair
    for (std::size_t round = 0; round < n; ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (used_ref[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (used_next[j]) continue;
                const double d = std::abs(ref[i] - next[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        used_ref[bi] = used_next[bj] = true;
        out[bi] = next[bj];
    }
    return out;
}

double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    const auto m = match_to(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - m[i]));
    return worst;
}

} // namespace rslax
