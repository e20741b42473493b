#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ajsf/error.hpp"
#include "ajsf/numeric.hpp"

namespace ajsf {

/// Dense univariate polynomial, coefficient k of x^k at index k. Trailing zero
/// coefficients are always trimmed, so the zero polynomial is empty and
/// equality is coefficientwise.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(T value) { return Polynomial(std::vector<T>{std::move(value)}); }
  static Polynomial monomial(T value, std::size_t k) {
    std::vector<T> c(k + 1, T(0));
    c[k] = std::move(value);
    return Polynomial(std::move(c));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const std::vector<T>& coefficients() const { return c_; }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
    return Polynomial(std::move(d));
  }

  /// Horner evaluation in any ring U that accepts T coefficients.
  template <class U>
  U evaluate(const U& x) const {
    U acc = U(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + U(c_[k]);
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == T(0)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }

  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  /// "3*x^2 - x + 1"; "0" for the zero polynomial.
  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k] == T(0)) continue;
      T mag = c_[k];
      const bool neg = mag < T(0);
      if (neg) mag = -mag;
      if (first) {
        if (neg) os << '-';
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      const bool unit = mag == T(1);
      if (!unit || k == 0) os << mag;
      if (k > 0) {
        if (!unit) os << '*';
        os << var;
        if (k > 1) os << '^' << k;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

using IntPoly = Polynomial<BigInt>;
using RatPoly = Polynomial<Rational>;

/// Euclidean division over a field. Throws DomainError on division by zero.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& a, const Polynomial<T>& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<T> rem = a.coefficients();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {Polynomial<T>{}, a};
  std::vector<T> quo(static_cast<std::size_t>(da - db + 1), T(0));
  const T lead = b.leading();
  for (int k = da - db; k >= 0; --k) {
    const T q = rem[static_cast<std::size_t>(k + db)] / lead;
    quo[static_cast<std::size_t>(k)] = q;
    if (q == T(0)) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * b.coeff(static_cast<std::size_t>(j));
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial<T>(std::move(quo)), Polynomial<T>(std::move(rem))};
}

/// Monic greatest common divisor over a field; gcd(0, 0) = 0.
template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * (T(1) / a.leading());
}

RatPoly to_rational(const IntPoly& p);

/// Bivariate polynomial with integer coefficients, stored as a polynomial in x
/// whose coefficients are polynomials in z: p(x, z) = sum_k coeff(k)(z) x^k.
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  explicit BivariatePolynomial(std::vector<IntPoly> x_coeffs);

  /// x^i z^j with coefficient c.
  static BivariatePolynomial term(BigInt c, std::size_t x_deg, std::size_t z_deg);
  /// Lifts a polynomial in x with constant (z-free) coefficients.
  static BivariatePolynomial from_x(const IntPoly& p);

  int degree_x() const { return static_cast<int>(c_.size()) - 1; }
  int degree_z() const;
  bool is_zero() const { return c_.empty(); }
  IntPoly coeff_x(std::size_t k) const { return k < c_.size() ? c_[k] : IntPoly{}; }
  BigInt coeff(std::size_t x_deg, std::size_t z_deg) const { return coeff_x(x_deg).coeff(z_deg); }

  BivariatePolynomial derivative_x() const;
  BivariatePolynomial derivative_z() const;

  Rational evaluate(const Rational& x, const Rational& z) const;
  /// p(x, z0) as a polynomial in x.
  IntPoly at_z(const BigInt& z0) const;

  BivariatePolynomial& operator+=(const BivariatePolynomial& o);
  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) { return a += b; }
  friend BivariatePolynomial operator-(BivariatePolynomial a);
  friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) { return a += -b; }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b);

  bool operator==(const BivariatePolynomial& o) const { return c_ == o.c_; }

  /// Exact division by a factor that is monic in x. Returns the quotient if
  /// the remainder vanishes.
  bool divisible_by_monic(const BivariatePolynomial& factor, BivariatePolynomial* quotient = nullptr) const;

  /// Canonical sparse text: terms by descending x-degree then descending
  /// z-degree, e.g. "x^5 - x^4 - 7*x^3*z + 6*x*z^2 - 24*z^2". "0" if zero.
  std::string to_string() const;

 private:
  void trim();

  std::vector<IntPoly> c_;
};

}  // namespace ajsf
