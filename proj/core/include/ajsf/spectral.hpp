#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ajsf/automata.hpp"
#include "ajsf/numeric.hpp"
#include "ajsf/polynomial.hpp"

namespace ajsf {

/// Square matrix of integer polynomials in z (z standing for e^{it}),
/// indexed by transducer states in the transducer's own order.
class SymbolicMatrix {
 public:
  explicit SymbolicMatrix(std::size_t n = 0) : n_(n), e_(n * n) {}

  std::size_t size() const { return n_; }
  IntPoly& operator()(std::size_t j, std::size_t k) { return e_[j * n_ + k]; }
  const IntPoly& operator()(std::size_t j, std::size_t k) const { return e_[j * n_ + k]; }

  SymbolicMatrix& operator+=(const SymbolicMatrix& o);

  /// Entrywise evaluation at an integer z.
  std::vector<BigInt> at(const BigInt& z) const;
  /// Maximum over rows of the sum of entries at z = 1.
  BigInt row_sum_norm() const;

  /// Same matrix with rows and columns reordered: result(a, b) =
  /// (*this)(perm[a], perm[b]).
  SymbolicMatrix permuted(const std::vector<std::size_t>& perm) const;

  bool operator==(const SymbolicMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<IntPoly> e_;
};

/// M_eps for every input eps in {0,1}^d (index = input bitmask): entry (j,k)
/// is z^h when the transducer has j --eps|h--> k.
std::vector<SymbolicMatrix> transition_matrices(const Transducer& tr);

/// B_{C,D}: sum of M_eps over eps with zeros on the coordinates in C and ones
/// on those in D (bitmasks). Throws DomainError if C and D overlap.
SymbolicMatrix aggregate(const std::vector<SymbolicMatrix>& m, int dimension, std::uint32_t zeros,
                         std::uint32_t ones);

/// A = B_{empty,empty}.
SymbolicMatrix adjacency(const Transducer& tr);

enum class CharPolySign {
  /// det(x I - A), monic in x.
  monic,
  /// det(A - x I) = (-1)^n det(x I - A).
  negated_identity,
};

/// Characteristic polynomial over Z[z] by the division-free Berkowitz
/// algorithm.
BivariatePolynomial char_poly(const SymbolicMatrix& a, CharPolySign sign = CharPolySign::monic);

struct SpectralResult {
  Rational e;
  Rational v;
  /// Dominant eigenvalue 2^d at z = 1.
  BigInt mu0;
  /// Largest modulus among the other eigenvalues at z = 1; 0 if there are none.
  double beta0 = 0.0;
  /// d - log2(beta0); +infinity when beta0 = 0.
  double delta = 0.0;
};

/// Exact mean and variance constants from implicit differentiation of
/// p(mu(z), z) = 0 at (2^d, 1). Throws NumericalError if p(2^d, 1) != 0 or
/// the root is not simple. beta0 and delta are left at zero.
SpectralResult dominant_constants(const BivariatePolynomial& p, int dimension);

struct SecondEigenvalue {
  double beta0 = 0.0;
  double delta = 0.0;
  /// Distinct roots of p(x, 1), excluding 2^d.
  std::vector<std::complex<double>> roots;
};

/// All distinct roots of p(x, 1) other than 2^d, via the square-free part and
/// a polished companion-matrix eigensolve. Throws NumericalError when a root
/// cannot be polished to a relative residual below 1e-10.
SecondEigenvalue second_eigenvalue(const BivariatePolynomial& p, int dimension);

/// Numeric roots of an integer polynomial (with multiplicity), polished by
/// Newton steps on the polynomial itself.
std::vector<std::complex<double>> numeric_roots(const std::vector<double>& coeffs);

/// Transducer + char poly + constants + second eigenvalue in one call.
SpectralResult analyze(const DigitSet& ds, int dimension);

}  // namespace ajsf
