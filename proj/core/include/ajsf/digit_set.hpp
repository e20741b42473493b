#pragma once

#include <cstdint>
#include <string>

#include "ajsf/numeric.hpp"

namespace ajsf {

/// Membership of a digit in the unique/nonunique and upper/lower partitions.
struct DigitClass {
  bool unique;
  bool upper;

  bool operator==(const DigitClass&) const = default;
};

class DigitSet;

/// Result of DigitSet::create: the normalized set plus whether it was obtained
/// by negation. When `negated` is true, an expansion of -n over `set` is,
/// digit-wise negated, an expansion of n over the requested bounds.
struct NormalizedDigitSet;

/// The contiguous digit set D_{l,u} = {l, ..., u} with l <= 0 < u, together
/// with every derived quantity the expansion, transducer and spectral code
/// needs.
///
/// Invariant: l > -2^{w-1}, where w is the unique integer with
/// 2^{w-1} <= u - l + 1 < 2^w. Sets violating it are reachable only through
/// create(), which negates them.
class DigitSet {
 public:
  /// Throws DomainError if l > 0, u < 1, or l <= -2^{w-1}.
  DigitSet(std::int64_t l, std::int64_t u);

  /// Accepts any l <= 0 < u and normalizes by negation if needed.
  static NormalizedDigitSet create(std::int64_t l, std::int64_t u);

  /// Symmetric set D_{-(2^{w-1}-1), 2^{w-1}-1}; its AJSF is the w-NAF.
  static DigitSet wnaf(int w);

  std::int64_t lower() const { return l_; }
  std::int64_t upper() const { return u_; }
  int width() const { return w_; }
  /// 2^{w-1}.
  std::int64_t half() const { return std::int64_t{1} << (w_ - 1); }
  std::int64_t size() const { return u_ - l_ + 1; }

  Rational lambda() const;

  std::int64_t tilde_l() const { return -l_; }
  std::int64_t tilde_u() const { return u_ - l_ - half(); }
  std::int64_t tilde_v() const { return (u_ - l_ + 1) % half(); }

  /// Bit i (0 <= i < w-1) of tilde_l, max(tilde_u, 0) and tilde_v.
  int l_bit(int i) const { return static_cast<int>((tilde_l() >> i) & 1); }
  int u_bit(int i) const {
    return tilde_u() < 0 ? 0 : static_cast<int>((tilde_u() >> i) & 1);
  }
  int v_bit(int i) const { return static_cast<int>((tilde_v() >> i) & 1); }

  bool contains(std::int64_t a) const { return l_ <= a && a <= u_; }
  bool is_unique(std::int64_t a) const {
    return contains(a) && u_ - half() < a && a < l_ + half();
  }
  bool is_nonunique(std::int64_t a) const { return contains(a) && !is_unique(a); }
  bool is_upper(std::int64_t a) const { return contains(a) && u_ - half() < a; }

  /// Throws DomainError if a is not a digit.
  DigitClass classify(std::int64_t a) const;

  /// "D_{l,u}".
  std::string name() const;

  bool operator==(const DigitSet&) const = default;

 private:
  std::int64_t l_;
  std::int64_t u_;
  int w_;
};

struct NormalizedDigitSet {
  DigitSet set;
  bool negated;
};

/// The unique w with 2^{w-1} <= size < 2^w.
int window_width(std::int64_t size);

}  // namespace ajsf
