#include "ajsf/expansion.hpp"

#include <algorithm>
#include <sstream>

#include "ajsf/error.hpp"

namespace ajsf {

JointExpansion::JointExpansion(std::size_t dimension, DigitSet digits)
    : dim_(dimension), set_(digits) {
  if (dim_ == 0) throw DomainError("expansion dimension must be >= 1");
}

JointExpansion::JointExpansion(DigitSet digits, const std::vector<IntVector>& columns)
    : dim_(columns.empty() ? 1 : columns.front().size()), set_(digits) {
  if (dim_ == 0) throw DomainError("expansion dimension must be >= 1");
  for (const auto& c : columns) {
    if (c.size() != dim_) throw DomainError("ragged expansion columns");
    push_column(c);
  }
}

JointExpansion JointExpansion::from_rows(DigitSet digits, const std::vector<IntVector>& rows) {
  if (rows.empty()) throw DomainError("expansion needs at least one row");
  const std::size_t len = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != len) throw DomainError("expansion rows differ in length");
  }
  JointExpansion e(rows.size(), digits);
  IntVector col(rows.size());
  for (std::size_t j = 0; j < len; ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) col[i] = rows[i][len - 1 - j];
    e.push_column(col);
  }
  return e;
}

bool JointExpansion::column_is_zero(std::size_t j) const {
  auto c = column(j);
  return std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; });
}

void JointExpansion::push_column(std::span<const std::int64_t> eps) {
  if (eps.size() != dim_) throw DomainError("column has wrong dimension");
  for (auto a : eps) {
    if (!set_.contains(a)) {
      throw DomainError("digit " + std::to_string(a) + " outside " + set_.name());
    }
  }
  digits_.insert(digits_.end(), eps.begin(), eps.end());
}

void JointExpansion::push_zero_columns(std::size_t count) {
  digits_.resize(digits_.size() + count * dim_, 0);
}

JointExpansion JointExpansion::canonical() const {
  JointExpansion c = *this;
  std::size_t len = length();
  while (len > 0 && column_is_zero(len - 1)) --len;
  c.digits_.resize(len * dim_);
  return c;
}

std::string JointExpansion::to_string() const {
  std::ostringstream os;
  const std::size_t len = length();
  if (len == 0) return {};
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i) os << '\n';
    for (std::size_t j = len; j-- > 0;) {
      os << digit(i, j);
      if (j) os << ' ';
    }
  }
  return os.str();
}

std::string JointExpansion::to_json() const {
  std::ostringstream os;
  os << "{\"l\":" << set_.lower() << ",\"u\":" << set_.upper() << ",\"dimension\":" << dim_
     << ",\"rows\":[";
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = length(); j-- > 0;) {
      os << digit(i, j);
      if (j) os << ',';
    }
    os << ']';
  }
  os << "]}";
  return os.str();
}

bool JointExpansion::operator==(const JointExpansion& other) const {
  if (dim_ != other.dim_ || !(set_ == other.set_)) return false;
  return canonical().digits_ == other.canonical().digits_;
}

IntVector value(const JointExpansion& e) {
  IntVector out(e.dimension(), 0);
  for (std::size_t i = 0; i < e.dimension(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = e.length(); j-- > 0;) {
      if (__builtin_mul_overflow(acc, 2, &acc) || __builtin_add_overflow(acc, e.digit(i, j), &acc)) {
        throw DomainError("expansion value overflows int64");
      }
    }
    out[i] = acc;
  }
  return out;
}

std::size_t hamming_weight(const JointExpansion& e) {
  std::size_t h = 0;
  for (std::size_t j = 0; j < e.length(); ++j) h += e.column_is_zero(j) ? 0 : 1;
  return h;
}

namespace {

constexpr std::int64_t kMagnitudeLimit = std::int64_t{1} << 61;

void check_input(const IntVector& n, const DigitSet& ds) {
  if (n.empty()) throw DomainError("input vector must have dimension >= 1");
  for (auto x : n) {
    if (ds.lower() == 0 && x < 0) {
      throw DomainError("negative component " + std::to_string(x) + " needs a digit set with l < 0");
    }
    if (x >= kMagnitudeLimit || x <= -kMagnitudeLimit) throw DomainError("input component too large");
  }
}

bool all_zero(const IntVector& n) {
  return std::all_of(n.begin(), n.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t max_abs(const IntVector& n) {
  std::int64_t m = 0;
  for (auto x : n) m = std::max(m, x < 0 ? -x : x);
  return m;
}

// AJSF weight recursion, reporting produced columns to `emit`: emit(a, w-2)
// for an odd step (digit column a, then w-2 forced zeros) and emit({}, 1) for
// an even step.
template <class Emit>
std::size_t run_ajsf(IntVector n, const DigitSet& ds, Emit&& emit) {
  check_input(n, ds);
  const std::size_t d = n.size();
  const std::int64_t half = ds.half();
  const std::int64_t l = ds.lower();
  const std::int64_t u = ds.upper();
  const std::int64_t digit_bound = std::max(-l, u);
  IntVector a(d), m(d);
  std::size_t h = 0;
  for (int guard = 0; !all_zero(n); ++guard) {
    if (guard > 4096) throw std::logic_error("AJSF recursion did not terminate");
    const bool even = std::all_of(n.begin(), n.end(), [](std::int64_t x) { return (x & 1) == 0; });
    if (even) {
      for (auto& x : n) x /= 2;
      emit(std::span<const std::int64_t>{}, 1);
      continue;
    }
    const std::int64_t before = max_abs(n);
    ++h;
    bool unique_all_even = true;
    for (std::size_t j = 0; j < d; ++j) {
      a[j] = l + floor_mod(n[j] - l, half);
      m[j] = (n[j] - a[j]) / half;
      if (ds.is_unique(a[j]) && (m[j] & 1) != 0) unique_all_even = false;
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (!ds.is_nonunique(a[j])) continue;
      const bool change = unique_all_even ? (m[j] & 1) != 0
                                          : floor_mod(m[j] - (u + 1), half) == 0;
      if (change) {
        a[j] += half;
        m[j] -= 1;
      }
    }
    emit(std::span<const std::int64_t>(a), static_cast<std::size_t>(ds.width() - 2));
    n = m;
    // Contraction once |n| exceeds the digit bound; otherwise n stays bounded.
    const std::int64_t after = max_abs(n);
    if (after > std::max(before, digit_bound)) {
      throw std::logic_error("AJSF recursion failed to contract");
    }
  }
  return h;
}

}  // namespace

JointExpansion ajsf(const IntVector& n, const DigitSet& ds) {
  JointExpansion e(n.size(), ds);
  run_ajsf(n, ds, [&](std::span<const std::int64_t> col, std::size_t zeros) {
    if (col.empty()) {
      e.push_zero_columns(zeros);
    } else {
      e.push_column(col);
      e.push_zero_columns(zeros);
    }
  });
  return e.canonical();
}

std::size_t ajsf_weight(const IntVector& n, const DigitSet& ds) {
  return run_ajsf(n, ds, [](std::span<const std::int64_t>, std::size_t) {});
}

std::size_t ajsf_weight_1d(std::int64_t n, const DigitSet& ds) {
  check_input(IntVector{n}, ds);
  const std::int64_t half = ds.half();
  const std::int64_t l = ds.lower();
  const std::int64_t u = ds.upper();
  std::size_t h = 0;
  while (n != 0) {
    if ((n & 1) == 0) {
      n /= 2;
      continue;
    }
    const std::int64_t r = floor_mod(n - l, half);
    const std::int64_t a = l + r;
    ++h;
    std::int64_t m = (n - a) / half;
    if ((m & 1) != 0 && r <= u - l - half) m -= 1;
    n = m;
  }
  return h;
}

JointExpansion wnaf(std::int64_t n, int w) {
  const DigitSet ds = DigitSet::wnaf(w);
  if (n >= kMagnitudeLimit || n <= -kMagnitudeLimit) throw DomainError("input too large");
  const std::int64_t full = std::int64_t{1} << w;
  const std::int64_t half = full / 2;
  JointExpansion e(1, ds);
  while (n != 0) {
    std::int64_t digit = 0;
    if (n & 1) {
      digit = floor_mod(n, full);
      if (digit >= half) digit -= full;
      n -= digit;
    }
    const std::int64_t col[1] = {digit};
    e.push_column(col);
    n /= 2;
  }
  return e;
}

std::string ajsf_violation(const JointExpansion& e) {
  const DigitSet& ds = e.digit_set();
  const std::size_t d = e.dimension();
  const std::size_t len = e.length();
  const std::size_t w = static_cast<std::size_t>(ds.width());
  const std::int64_t half = ds.half();
  const std::int64_t u = ds.upper();
  auto at = [](const char* what, std::size_t j) { return std::string(what) + " at column " + std::to_string(j); };
  for (std::size_t j = 0; j < len; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      if (!ds.contains(e.digit(i, j))) return at("digit outside the digit set", j);
    }
  }
  for (std::size_t j = 0; j < len; ++j) {
    if (e.column_is_zero(j)) continue;
    bool has_odd = false;
    for (std::size_t i = 0; i < d; ++i) has_odd |= (e.digit(i, j) & 1) != 0;
    if (!has_odd) return at("condition 1 (nonzero column without an odd digit)", j);
    for (std::size_t k = 1; k + 1 < w; ++k) {
      if (j + k < len && !e.column_is_zero(j + k)) return at("condition 2 (nonzero column inside the zero window)", j + k);
    }
    const std::size_t next = j + w - 1;
    if (next >= len || e.column_is_zero(next)) continue;
    bool witness = false;
    for (std::size_t i = 0; i < d; ++i) {
      const std::int64_t cur = e.digit(i, j);
      const std::int64_t nxt = e.digit(i, next);
      if ((nxt & 1) != 0 && ds.is_unique(cur)) witness = true;
      if (ds.is_nonunique(cur) && floor_mod(nxt - (u + 1), half) == 0) {
        return at("condition 3b (nonunique digit followed by a digit = u+1 mod 2^(w-1))", j);
      }
      if (ds.is_nonunique(cur) && ds.is_upper(cur) && floor_mod(nxt - u, half) != 0) {
        return at("condition 3c (upper nonunique digit not followed by a digit = u mod 2^(w-1))", j);
      }
    }
    if (!witness) return at("condition 3a (no unique digit above an odd digit)", j);
  }
  return {};
}

bool validate_ajsf(const JointExpansion& e) { return ajsf_violation(e).empty(); }

}  // namespace ajsf
