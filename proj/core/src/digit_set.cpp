#include "ajsf/digit_set.hpp"

#include <bit>

#include "ajsf/error.hpp"

namespace ajsf {

int window_width(std::int64_t size) {
  if (size < 2) throw DomainError("digit set must contain at least two digits");
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(size)));
}

namespace {

void check_bounds(std::int64_t l, std::int64_t u) {
  if (l > 0) throw DomainError("lower digit bound l must be <= 0, got " + std::to_string(l));
  if (u < 1) throw DomainError("upper digit bound u must be >= 1, got " + std::to_string(u));
  if (u - l + 1 >= (std::int64_t{1} << 61)) throw DomainError("digit set too large");
}

}  // namespace

DigitSet::DigitSet(std::int64_t l, std::int64_t u) : l_(l), u_(u), w_(0) {
  check_bounds(l, u);
  w_ = window_width(u - l + 1);
  if (l_ <= -half()) {
    throw DomainError("D_{" + std::to_string(l) + "," + std::to_string(u) +
                      "} requires normalization by negation (l <= -2^{w-1})");
  }
}

NormalizedDigitSet DigitSet::create(std::int64_t l, std::int64_t u) {
  check_bounds(l, u);
  const int w = window_width(u - l + 1);
  if (l <= -(std::int64_t{1} << (w - 1))) return {DigitSet(-u, -l), true};
  return {DigitSet(l, u), false};
}

DigitSet DigitSet::wnaf(int w) {
  if (w < 2 || w > 60) throw DomainError("w-NAF width must lie in [2, 60]");
  const std::int64_t m = (std::int64_t{1} << (w - 1)) - 1;
  return DigitSet(-m, m);
}

Rational DigitSet::lambda() const {
  auto sign = [](std::int64_t k) { return (k % 2 == 0) ? 1 : -1; };
  Rational num = 2 * size() - sign(l_) - sign(u_);
  Rational den = BigInt(1) << w_;
  Rational r = num / den;
  r.canonicalize();
  return r;
}

DigitClass DigitSet::classify(std::int64_t a) const {
  if (!contains(a)) {
    throw DomainError("digit " + std::to_string(a) + " is not in " + name());
  }
  return {is_unique(a), is_upper(a)};
}

std::string DigitSet::name() const {
  return "D_{" + std::to_string(l_) + "," + std::to_string(u_) + "}";
}

}  // namespace ajsf
