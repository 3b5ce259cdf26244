#pragma once

#include <vector>

#include "rslax/core.hpp"

namespace rslax {

// |det| < 1e-12 * (max |entry|)^n counts as singular
bool is_numerically_singular(const CMatrix& M);

Complex determinant(const CMatrix& M);

// A^{-1} B, SingularMatrix when A is singular by the scale-aware test
CMatrix solve_left(const CMatrix& A, const CMatrix& B);

CVector eigenvalues(const CMatrix& M);

// sorted by (Re, Im)
std::vector<Complex> sorted_values(const CVector& v);
std::vector<Complex> sorted_values(std::vector<Complex> v);

// greedy nearest-neighbour pairing; returns `next` permuted to follow `ref`
std::vector<Complex> match_to(const std::vector<Complex>& ref, const std::vector<Complex>& next);

// max over greedy pairs of |a_i - b_pi(i)|
double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

double max_abs(const CMatrix& M);

// max |A - B| / max(|B|, floor)
double relative_max_error(const CMatrix& A, const CMatrix& B, double floor = 1e-300);

} // namespace rslax
