#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ajsf/digit_set.hpp"
#include "ajsf/expansion.hpp"

namespace ajsf {

/// Minimal Hamming weight over *all* D_{l,u} representations, for every
/// integer vector in the box [-bound, bound]^d.
///
/// W(0) = 0 and W(n) = min over columns eps = n (mod 2) of [eps != 0] +
/// W((n - eps)/2). The recursion graph has cycles (e.g. n = -1, eps = 1), all
/// of positive weight, so the table is filled by a backward 0-1 BFS from the
/// zero vector instead of plain memoized recursion. An optimal path from any
/// n in the box never leaves the box when bound >= max(|l|, u), since
/// |(n - eps)/2| <= max(|n|, max(|l|, u)).
class MinWeightTable {
 public:
  static constexpr std::size_t kDefaultBudget = std::size_t{1} << 26;

  /// Throws BudgetExceeded if (2*bound+1)^d exceeds `budget`.
  MinWeightTable(const DigitSet& ds, std::size_t dimension, std::int64_t bound,
                 std::size_t budget = kDefaultBudget);

  /// Throws DomainError if n is outside the box. Returns kUnreachable when n
  /// has no representation at all (negative input with l = 0).
  std::uint32_t weight(const IntVector& n) const;

  static constexpr std::uint32_t kUnreachable = UINT32_MAX;

  std::int64_t bound() const { return bound_; }
  std::size_t dimension() const { return dim_; }

 private:
  std::size_t index(const IntVector& n) const;

  DigitSet set_;
  std::size_t dim_;
  std::int64_t bound_;
  std::int64_t side_;
  std::vector<std::uint32_t> dist_;
};

/// Exact minimal weight of n over all representations with digits in `ds`.
/// Builds a table for the smallest admissible box containing n.
std::size_t min_weight_bruteforce(const IntVector& n, const DigitSet& ds,
                                  std::size_t budget = MinWeightTable::kDefaultBudget);

/// Every expansion of n with at most `max_len` columns that passes
/// validate_ajsf, in canonical form, without duplicates. Uses a column-wise
/// DFS that checks the syntactic conditions incrementally; independent of the
/// AJSF algorithm.
std::vector<JointExpansion> enumerate_ajsf_candidates(const IntVector& n, const DigitSet& ds,
                                                      std::size_t max_len);

}  // namespace ajsf
