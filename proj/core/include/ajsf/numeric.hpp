#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace ajsf {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Integer vector (m_1, ..., m_d); used for scalars and joint inputs alike.
using IntVector = std::vector<std::int64_t>;

/// "p/q" for non-integers, "p" for integers.
inline std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace ajsf
