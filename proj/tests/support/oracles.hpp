#pragma once

// Independent reference computations used only by the tests. None of them
// calls into the transducer, spectral or statistics code they check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ajsf/digit_set.hpp"
#include "ajsf/numeric.hpp"
#include "ajsf/polynomial.hpp"
#include "ajsf/spectral.hpp"

namespace oracle {

using ajsf::BigInt;
using ajsf::Rational;

/// Exact determinant by fraction-free Bareiss elimination with row pivoting.
BigInt bareiss_det(std::vector<std::vector<BigInt>> m);

/// det(x I - A(z)) at integers (x, z), straight from the matrix entries.
BigInt char_poly_at(const ajsf::SymbolicMatrix& a, long x, long z);

/// Mean and variance constants in dimension one from the closed forms in
/// terms of w and lambda.
Rational closed_form_e(const ajsf::DigitSet& ds);
Rational closed_form_v(const ajsf::DigitSet& ds);

/// The 21 x 21 adjacency matrix published for D_{-2,3} in dimension two;
/// entry (j, k) is a + b z with {a, b} stored as an IntPoly.
ajsf::SymbolicMatrix published_adjacency();

/// A simultaneous row/column permutation p with b(a, c) = a_(p[a], p[c]), if
/// one exists.
std::optional<std::vector<std::size_t>> find_isomorphism(const ajsf::SymbolicMatrix& a,
                                                         const ajsf::SymbolicMatrix& b);

/// The factored characteristic polynomial printed for D_{-2,3}, d = 2, in the
/// det(A - x I) convention, expanded.
ajsf::BivariatePolynomial published_char_poly();

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Every digit set with 2 <= w <= w_max and l > -2^{w-1}.
std::vector<ajsf::DigitSet> all_digit_sets(int w_max);

}  // namespace oracle
