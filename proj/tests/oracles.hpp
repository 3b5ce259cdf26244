#pragma once

// Independent reference implementations used only by the tests. None of these
// call into the library's special-function or linear-algebra code.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline const double kPi = 3.14159265358979323846;

// theta[a;b](z|tau) as a plain partial sum over |k| <= K
inline cd theta_partial(cd a, cd b, cd z, cd tau, int K = 50)
{
    const cd I(0.0, 1.0);
    cd s = 0.0;
    for (int k = -K; k <= K; ++k) {
        const cd m = double(k) + a;
        s += std::exp(kPi * I * tau * m * m + 2.0 * kPi * I * m * (z + b));
    }
    return s;
}

// Weierstrass product over the lattice points m w1 + n w2 with |m|, |n| <= R
inline cd sigma_product(cd z, cd w1, cd w2, int R)
{
    cd log_sum = std::log(z);
    for (int m = -R; m <= R; ++m)
        for (int n = -R; n <= R; ++n) {
            if (m == 0 && n == 0) continue;
            const cd w = double(m) * w1 + double(n) * w2;
            const cd t = z / w;
            log_sum += std::log(1.0 - t) + t + 0.5 * t * t;
        }
    return std::exp(log_sum);
}

// two Richardson steps over R, 2R, 4R; the error left over falls off like R^-3
inline cd sigma_extrapolated(cd z, cd w1, cd w2, int R = 40)
{
    const cd a = sigma_product(z, w1, w2, R);
    const cd b = sigma_product(z, w1, w2, 2 * R);
    const cd c = sigma_product(z, w1, w2, 4 * R);
    const cd ab = (4.0 * b - a) / 3.0;
    const cd bc = (4.0 * c - b) / 3.0;
    return (16.0 * bc - ab) / 15.0;
}

// invariants g2 = 60 sum' w^-4, g3 = 140 sum' w^-6 by square lattice sums,
// with the R^-2 tail of the truncated sums removed by one Richardson step
inline void lattice_sums(cd w1, cd w2, int R, cd& s4, cd& s6)
{
    s4 = 0.0;
    s6 = 0.0;
    for (int m = -R; m <= R; ++m)
        for (int n = -R; n <= R; ++n) {
            if (m == 0 && n == 0) continue;
            const cd w = double(m) * w1 + double(n) * w2;
            const cd w2i = 1.0 / (w * w);
            s4 += w2i * w2i;
            s6 += w2i * w2i * w2i;
        }
}

inline void invariants(cd w1, cd w2, cd& g2, cd& g3, int R = 100)
{
    cd a4, a6, b4, b6;
    lattice_sums(w1, w2, R, a4, a6);
    lattice_sums(w1, w2, 2 * R, b4, b6);
    g2 = 60.0 * (4.0 * b4 - a4) / 3.0;
    g3 = 140.0 * b6;
}

// Gaussian elimination with partial pivoting
inline cd determinant(Mat A)
{
    const auto n = A.rows();
    cd det = 1.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        for (Eigen::Index r = c + 1; r < n; ++r)
            if (std::abs(A(r, c)) > std::abs(A(p, c))) p = r;
        if (A(p, c) == 0.0) return 0.0;
        if (p != c) {
            A.row(p).swap(A.row(c));
            det = -det;
        }
        det *= A(c, c);
        for (Eigen::Index r = c + 1; r < n; ++r) {
            const cd f = A(r, c) / A(c, c);
            for (Eigen::Index k = c; k < n; ++k) A(r, k) -= f * A(c, k);
        }
    }
    return det;
}

// Gauss-Jordan inverse
inline Mat inverse(Mat A)
{
    const auto n = A.rows();
    Mat B = Mat::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        for (Eigen::Index r = c + 1; r < n; ++r)
            if (std::abs(A(r, c)) > std::abs(A(p, c))) p = r;
        A.row(p).swap(A.row(c));
        B.row(p).swap(B.row(c));
        const cd d = A(c, c);
        A.row(c) /= d;
        B.row(c) /= d;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == c) continue;
            const cd f = A(r, c);
            A.row(r) -= f * A.row(c);
            B.row(r) -= f * B.row(c);
        }
    }
    return B;
}

inline Mat minor_matrix(const Mat& M, Eigen::Index k, Eigen::Index l)
{
    const auto n = M.rows();
    Mat out(n - 1, n - 1);
    for (Eigen::Index i = 0, a = 0; i < n; ++i) {
        if (i == k) continue;
        for (Eigen::Index j = 0, b = 0; j < n; ++j) {
            if (j == l) continue;
            out(a, b++) = M(i, j);
        }
        ++a;
    }
    return out;
}

// e_1..e_n of the roots via Newton's identities on power sums of a matrix
inline std::vector<cd> power_sums(const Mat& M)
{
    std::vector<cd> p;
    Mat P = M;
    for (Eigen::Index k = 0; k < M.rows(); ++k) {
        p.push_back(P.trace());
        P = P * M;
    }
    return p;
}

inline double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double max_rel(const Mat& A, const Mat& B)
{
    double m = 0.0, s = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            m = std::max(m, std::abs(A(i, j) - B(i, j)));
            s = std::max(s, std::abs(B(i, j)));
        }
    return m / std::max(s, 1e-300);
}

} // namespace oracle
