#pragma once

#include <vector>

#include "rslax/core.hpp"

namespace rslax {

enum class ReductionKind { RationalCM, TrigCM, RationalRS, TrigRS };

const char* to_string(ReductionKind k);

struct ReductionPair {
    CMatrix X;
    CMatrix Y;
    ReductionKind kind = ReductionKind::RationalCM;
};

// O = g (1 1^T - I); O' = t I + u v^T
struct OrbitSpec {
    Complex g{1.0, 0.0};
    CVector u;
    CVector v;
    Complex t{1.0, 0.0};

    CMatrix O(Eigen::Index n) const;
    CMatrix O_prime() const;
    // t^{n-1} (t + v^T u)
    Complex det_O_prime() const;
};

// [X,Y], XYX^-1 - Y or XYX^-1Y^-1 depending on the kind
CMatrix moment_map(const ReductionPair& pair);

// size-normalized Frobenius distance of the moment map to the target orbit element
double moment_residual(const ReductionPair& pair, const CMatrix& target);

ReductionPair solve_rational_cm(const std::vector<Complex>& q, const std::vector<Complex>& p, const OrbitSpec& orbit);

ReductionPair solve_rational_rs(const std::vector<Complex>& theta, const OrbitSpec& orbit,
                                const std::vector<Complex>& diag_free);

struct TrigCMSolution {
    ReductionPair pair;
    // moment map value -g I + 1 v^T, conjugate to O
    CMatrix moment;
};

TrigCMSolution solve_trig_cm(const std::vector<Complex>& q, const OrbitSpec& orbit, const std::vector<Complex>& gauge);

// v solving sum_i u_i v_i / (e^{theta_i - theta_j} - t) = 1 for every j
CVector trig_rs_consistent_v(const std::vector<Complex>& theta, const CVector& u, Complex t);

ReductionPair solve_trig_rs(const std::vector<Complex>& theta, const OrbitSpec& orbit,
                            const std::vector<Complex>& diag_free);

// O + g I has rank one with trace n g; distance measured by the second singular value
double orbit_O_distance(const CMatrix& M, Complex g);

ReductionPair dualize(const ReductionPair& pair);

// the position multiset carried by the diagonal member
std::vector<Complex> positions(const ReductionPair& pair);

} // namespace rslax
