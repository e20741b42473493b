#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ajsf/digit_set.hpp"
#include "ajsf/numeric.hpp"

namespace ajsf {

/// A dimension-d joint representation: columns eps_0, eps_1, ... (eps_j is the
/// coefficient of 2^j), each a d-vector with entries in the digit set.
///
/// Stored column-major. Leading (high) zero columns are allowed; equality
/// compares canonical forms, where they are trimmed.
class JointExpansion {
 public:
  JointExpansion(std::size_t dimension, DigitSet digits);

  /// `columns[j]` is eps_j. Throws DomainError on ragged columns or digits
  /// outside the set.
  JointExpansion(DigitSet digits, const std::vector<IntVector>& columns);

  /// Rows as printed (most significant digit first), one row per coordinate.
  static JointExpansion from_rows(DigitSet digits, const std::vector<IntVector>& rows);

  std::size_t dimension() const { return dim_; }
  /// Number of stored columns, including leading zeros.
  std::size_t length() const { return dim_ == 0 ? 0 : digits_.size() / dim_; }
  const DigitSet& digit_set() const { return set_; }

  std::span<const std::int64_t> column(std::size_t j) const {
    return {digits_.data() + j * dim_, dim_};
  }
  /// Digit of coordinate `row` (0-based) at position `col`; zero past the end.
  std::int64_t digit(std::size_t row, std::size_t col) const {
    return col < length() ? digits_[col * dim_ + row] : 0;
  }
  bool column_is_zero(std::size_t j) const;

  void push_column(std::span<const std::int64_t> eps);
  void push_zero_columns(std::size_t count);

  /// Copy with leading zero columns removed.
  JointExpansion canonical() const;

  /// Row-major text, most significant digit first, digits separated by
  /// spaces, rows separated by '\n'. Negative digits print as "-k". The empty
  /// expansion prints as the empty string.
  std::string to_string() const;
  /// {"l":..,"u":..,"dimension":..,"rows":[[...],...]} with rows MSB first.
  std::string to_json() const;

  bool operator==(const JointExpansion& other) const;

 private:
  std::size_t dim_;
  DigitSet set_;
  std::vector<std::int64_t> digits_;
};

/// sum_j eps_j 2^j. Throws DomainError on int64 overflow.
IntVector value(const JointExpansion& e);

/// Number of nonzero columns.
std::size_t hamming_weight(const JointExpansion& e);

/// The asymmetric joint sparse form of n over `ds`, recording every column.
///
/// Requires n >= 0 componentwise when l = 0 (DomainError otherwise). Negative
/// components are accepted for l < 0.
JointExpansion ajsf(const IntVector& n, const DigitSet& ds);

/// Weight of the AJSF, without materializing it.
std::size_t ajsf_weight(const IntVector& n, const DigitSet& ds);

/// One-dimensional specialization with the simplified inner test.
std::size_t ajsf_weight_1d(std::int64_t n, const DigitSet& ds);

/// Width-w non-adjacent form of n (digits odd with modulus < 2^{w-1}, each
/// nonzero digit followed by w-1 zeros). The attached digit set is
/// DigitSet::wnaf(w).
JointExpansion wnaf(std::int64_t n, int w);

/// True iff every digit lies in the set and the syntactic AJSF conditions hold:
/// (1) each column is zero or has an odd digit; (2) a nonzero column is
/// followed by w-2 zero columns; (3a-c) the unique/nonunique/upper constraints
/// between eps_j and eps_{j+w-1} when both are nonzero.
bool validate_ajsf(const JointExpansion& e);

/// Empty if validate_ajsf(e) holds; otherwise names the first violated
/// condition and its column.
std::string ajsf_violation(const JointExpansion& e);

}  // namespace ajsf
