#include "ajsf/spectral.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "ajsf/error.hpp"

namespace ajsf {

SymbolicMatrix& SymbolicMatrix::operator+=(const SymbolicMatrix& o) {
  if (o.n_ != n_) throw DomainError("matrix size mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

std::vector<BigInt> SymbolicMatrix::at(const BigInt& z) const {
  std::vector<BigInt> out;
  out.reserve(e_.size());
  for (const auto& p : e_) out.push_back(p.evaluate(z));
  return out;
}

BigInt SymbolicMatrix::row_sum_norm() const {
  BigInt best = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    BigInt sum = 0;
    for (std::size_t k = 0; k < n_; ++k) sum += abs((*this)(j, k).evaluate(BigInt(1)));
    if (sum > best) best = sum;
  }
  return best;
}

SymbolicMatrix SymbolicMatrix::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_) throw DomainError("permutation has wrong size");
  SymbolicMatrix out(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) out(a, b) = (*this)(perm[a], perm[b]);
  }
  return out;
}

std::vector<SymbolicMatrix> transition_matrices(const Transducer& tr) {
  const std::size_t n = tr.num_states();
  std::vector<SymbolicMatrix> m(tr.num_inputs(), SymbolicMatrix(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::uint32_t e = 0; e < tr.num_inputs(); ++e) {
      const Transition& t = tr.transition(j, e);
      m[e](j, t.target) += IntPoly::monomial(1, static_cast<std::size_t>(t.output));
    }
  }
  return m;
}

SymbolicMatrix aggregate(const std::vector<SymbolicMatrix>& m, int dimension, std::uint32_t zeros,
                         std::uint32_t ones) {
  if ((zeros & ones) != 0) throw DomainError("coordinate sets C and D must be disjoint");
  const std::uint32_t inputs = 1U << dimension;
  if (m.size() != inputs) throw DomainError("expected one matrix per input column");
  if ((zeros | ones) >= inputs) throw DomainError("coordinate set outside the dimension");
  SymbolicMatrix out(m.front().size());
  for (std::uint32_t e = 0; e < inputs; ++e) {
    if ((e & zeros) == 0 && (e & ones) == ones) out += m[e];
  }
  return out;
}

SymbolicMatrix adjacency(const Transducer& tr) {
  return aggregate(transition_matrices(tr), tr.dimension(), 0, 0);
}

BivariatePolynomial char_poly(const SymbolicMatrix& a, CharPolySign sign) {
  const std::size_t n = a.size();
  // Nonzero column indices per row, for sparse products.
  std::vector<std::vector<std::size_t>> support(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!a(j, k).is_zero()) support[j].push_back(k);
    }
  }

  // p[i] is the coefficient of x^{r-i} in the characteristic polynomial of
  // the leading r x r block.
  std::vector<IntPoly> p{IntPoly::constant(1)};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<IntPoly> toeplitz(r + 2);
    toeplitz[0] = IntPoly::constant(1);
    toeplitz[1] = -a(r, r);
    std::vector<IntPoly> vec(r);
    for (std::size_t j = 0; j < r; ++j) vec[j] = a(j, r);
    for (std::size_t k = 0; k < r; ++k) {
      IntPoly dot;
      for (std::size_t j : support[r]) {
        if (j < r && !vec[j].is_zero()) dot += a(r, j) * vec[j];
      }
      toeplitz[k + 2] = -dot;
      if (k + 1 == r) break;
      std::vector<IntPoly> next(r);
      for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t c : support[j]) {
          if (c < r && !vec[c].is_zero()) next[j] += a(j, c) * vec[c];
        }
      }
      vec = std::move(next);
    }
    std::vector<IntPoly> q(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, r); ++j) {
        if (!toeplitz[i - j].is_zero() && !p[j].is_zero()) q[i] += toeplitz[i - j] * p[j];
      }
    }
    p = std::move(q);
  }

  std::vector<IntPoly> by_degree(n + 1);
  for (std::size_t i = 0; i <= n; ++i) by_degree[n - i] = std::move(p[i]);
  BivariatePolynomial out(std::move(by_degree));
  if (sign == CharPolySign::negated_identity && n % 2 == 1) out = -out;
  return out;
}

SpectralResult dominant_constants(const BivariatePolynomial& p, int dimension) {
  if (dimension < 1 || dimension > 30) throw DomainError("dimension out of range");
  const Rational x0 = Rational(BigInt(1) << dimension);
  const Rational z0 = 1;
  if (p.evaluate(x0, z0) != 0) throw NumericalError("2^d is not a root of the characteristic polynomial at z = 1");
  const auto px_poly = p.derivative_x();
  const auto pz_poly = p.derivative_z();
  const Rational px = px_poly.evaluate(x0, z0);
  if (px == 0) throw NumericalError("dominant eigenvalue is not simple");
  const Rational pz = pz_poly.evaluate(x0, z0);
  const Rational pxx = px_poly.derivative_x().evaluate(x0, z0);
  const Rational pxz = px_poly.derivative_z().evaluate(x0, z0);
  const Rational pzz = pz_poly.derivative_z().evaluate(x0, z0);

  const Rational d1 = -pz / px;
  const Rational d2 = -(pxx * d1 * d1 + 2 * pxz * d1 + pzz) / px;
  SpectralResult r;
  r.mu0 = BigInt(1) << dimension;
  r.e = d1 / x0;
  r.v = (d2 + d1) / x0 - r.e * r.e;
  r.e.canonicalize();
  r.v.canonicalize();
  return r;
}

std::vector<std::complex<double>> numeric_roots(const std::vector<double>& coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
  if (deg <= 1) return {};
  const std::size_t n = deg - 1;
  const double lead = coeffs[n];
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 1; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -coeffs[i] / lead;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion eigensolver failed");

  using C = std::complex<long double>;
  auto eval = [&](C z, C& dz) {
    C v = 0;
    dz = 0;
    for (std::size_t k = n + 1; k-- > 0;) {
      dz = dz * z + v;
      v = v * z + static_cast<long double>(coeffs[k]);
    }
    return v;
  };
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    C z(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    C dz;
    C v = eval(z, dz);
    for (int it = 0; it < 50 && std::abs(v) > 0; ++it) {
      if (std::abs(dz) == 0) break;
      const C cand = z - v / dz;
      C dcand;
      const C vc = eval(cand, dcand);
      if (!(std::abs(vc) < std::abs(v))) break;
      z = cand;
      v = vc;
      dz = dcand;
    }
    roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return roots;
}

namespace {

double relative_residual(const std::vector<double>& coeffs, std::complex<double> z) {
  std::complex<long double> v = 0;
  long double scale = 0;
  const long double r = std::abs(std::complex<long double>(z));
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    v = v * std::complex<long double>(z) + static_cast<long double>(coeffs[k]);
    scale = scale * r + std::fabs(static_cast<long double>(coeffs[k]));
  }
  return scale == 0 ? 0.0 : static_cast<double>(std::abs(v) / scale);
}

}  // namespace

SecondEigenvalue second_eigenvalue(const BivariatePolynomial& p, int dimension) {
  const RatPoly q = to_rational(p.at_z(1));
  if (q.is_zero()) throw NumericalError("characteristic polynomial vanishes at z = 1");
  RatPoly sf = divmod(q, gcd(q, q.derivative())).first;
  std::size_t shift = 0;
  while (shift < sf.coefficients().size() && sf.coefficients()[shift] == 0) ++shift;
  if (shift > 0) {
    sf = RatPoly(std::vector<Rational>(sf.coefficients().begin() + static_cast<std::ptrdiff_t>(shift),
                                       sf.coefficients().end()));
  }
  const Rational mu0 = Rational(BigInt(1) << dimension);
  auto [rest, rem] = divmod(sf, RatPoly{-mu0, Rational(1)});
  if (!rem.is_zero()) throw NumericalError("2^d is not an eigenvalue at z = 1");
  rest = rest * (Rational(1) / rest.leading());

  std::vector<double> coeffs;
  for (const auto& c : rest.coefficients()) coeffs.push_back(c.get_d());

  SecondEigenvalue out;
  out.roots = numeric_roots(coeffs);
  if (shift > 0) out.roots.emplace_back(0.0, 0.0);
  for (const auto& z : out.roots) {
    if (relative_residual(coeffs, z) > 1e-10 && std::abs(z) != 0.0) {
      throw NumericalError("root polishing did not reach the residual tolerance");
    }
    out.beta0 = std::max(out.beta0, std::abs(z));
  }
  if (out.beta0 >= mu0.get_d()) throw NumericalError("2^d is not the unique dominant eigenvalue");
  out.delta = out.beta0 == 0.0 ? std::numeric_limits<double>::infinity()
                               : static_cast<double>(dimension) - std::log2(out.beta0);
  return out;
}

SpectralResult analyze(const DigitSet& ds, int dimension) {
  const Transducer tr = ajsf_transducer(ds, dimension);
  const BivariatePolynomial p = char_poly(adjacency(tr));
  SpectralResult r = dominant_constants(p, dimension);
  const SecondEigenvalue s = second_eigenvalue(p, dimension);
  r.beta0 = s.beta0;
  r.delta = s.delta;
  return r;
}

}  // namespace ajsf
