#include "ajsf/polynomial.hpp"

namespace ajsf {

RatPoly to_rational(const IntPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.coefficients().size());
  for (const auto& x : p.coefficients()) c.emplace_back(x);
  return RatPoly(std::move(c));
}

BivariatePolynomial::BivariatePolynomial(std::vector<IntPoly> x_coeffs) : c_(std::move(x_coeffs)) { trim(); }

void BivariatePolynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BivariatePolynomial BivariatePolynomial::term(BigInt c, std::size_t x_deg, std::size_t z_deg) {
  std::vector<IntPoly> xs(x_deg + 1);
  xs[x_deg] = IntPoly::monomial(std::move(c), z_deg);
  return BivariatePolynomial(std::move(xs));
}

BivariatePolynomial BivariatePolynomial::from_x(const IntPoly& p) {
  std::vector<IntPoly> xs;
  for (const auto& c : p.coefficients()) xs.push_back(IntPoly::constant(c));
  return BivariatePolynomial(std::move(xs));
}

int BivariatePolynomial::degree_z() const {
  int d = -1;
  for (const auto& c : c_) d = std::max(d, c.degree());
  return d;
}

BivariatePolynomial BivariatePolynomial::derivative_x() const {
  std::vector<IntPoly> out;
  for (std::size_t k = 1; k < c_.size(); ++k) out.push_back(c_[k] * BigInt(static_cast<long>(k)));
  return BivariatePolynomial(std::move(out));
}

BivariatePolynomial BivariatePolynomial::derivative_z() const {
  std::vector<IntPoly> out;
  for (const auto& c : c_) out.push_back(c.derivative());
  return BivariatePolynomial(std::move(out));
}

Rational BivariatePolynomial::evaluate(const Rational& x, const Rational& z) const {
  Rational acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + to_rational(c_[k]).evaluate(z);
  return acc;
}

IntPoly BivariatePolynomial::at_z(const BigInt& z0) const {
  std::vector<BigInt> out;
  for (const auto& c : c_) out.push_back(c.evaluate(z0));
  return IntPoly(std::move(out));
}

BivariatePolynomial& BivariatePolynomial::operator+=(const BivariatePolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

BivariatePolynomial operator-(BivariatePolynomial a) {
  for (auto& c : a.c_) c = -c;
  return a;
}

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<IntPoly> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return BivariatePolynomial(std::move(out));
}

bool BivariatePolynomial::divisible_by_monic(const BivariatePolynomial& factor, BivariatePolynomial* quotient) const {
  if (factor.is_zero() || !(factor.c_.back() == IntPoly::constant(1))) {
    throw DomainError("divisor must be monic in x");
  }
  const int df = factor.degree_x();
  std::vector<IntPoly> rem = c_;
  const int dp = degree_x();
  std::vector<IntPoly> quo(dp >= df ? static_cast<std::size_t>(dp - df + 1) : 0);
  for (int k = dp - df; k >= 0; --k) {
    const IntPoly q = rem[static_cast<std::size_t>(k + df)];
    quo[static_cast<std::size_t>(k)] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= df; ++j) rem[static_cast<std::size_t>(k + j)] -= q * factor.c_[static_cast<std::size_t>(j)];
  }
  for (const auto& r : rem) {
    if (!r.is_zero()) return false;
  }
  if (quotient) *quotient = BivariatePolynomial(std::move(quo));
  return true;
}

std::string BivariatePolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const auto& zc = c_[i].coefficients();
    for (std::size_t j = zc.size(); j-- > 0;) {
      if (zc[j] == 0) continue;
      BigInt mag = abs(zc[j]);
      const bool neg = zc[j] < 0;
      if (first) {
        if (neg) os << '-';
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      std::string mono;
      if (i > 0) mono = i == 1 ? "x" : "x^" + std::to_string(i);
      if (j > 0) {
        if (!mono.empty()) mono += '*';
        mono += j == 1 ? "z" : "z^" + std::to_string(j);
      }
      if (mono.empty()) {
        os << mag;
      } else if (mag == 1) {
        os << mono;
      } else {
        os << mag << '*' << mono;
      }
    }
  }
  return os.str();
}

}  // namespace ajsf
