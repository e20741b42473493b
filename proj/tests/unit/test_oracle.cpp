#include <doctest.h>

#include "ajsf/error.hpp"
#include "ajsf/expansion.hpp"
#include "ajsf/oracle.hpp"

using ajsf::DigitSet;
using ajsf::IntVector;

TEST_CASE("minimal weights of small inputs") {
  const DigitSet ds(-2, 3);
  CHECK(ajsf::min_weight_bruteforce({0, 0}, ds) == 0);
  CHECK(ajsf::min_weight_bruteforce({7, 11}, ds) == 2);
  CHECK(ajsf::min_weight_bruteforce({7}, DigitSet(-1, 1)) == 2);
  CHECK(ajsf::min_weight_bruteforce({15}, DigitSet(0, 1)) == 4);
  CHECK(ajsf::min_weight_bruteforce({15}, DigitSet(-1, 1)) == 2);
}

TEST_CASE("non-negative digit sets cannot represent negative inputs") {
  const ajsf::MinWeightTable table(DigitSet(0, 3), 1, 16);
  CHECK(table.weight({-1}) == ajsf::MinWeightTable::kUnreachable);
  CHECK(table.weight({5}) == 2);
  CHECK_THROWS_AS(table.weight({17}), ajsf::DomainError);
}

TEST_CASE("budget guard") {
  CHECK_THROWS_AS(ajsf::MinWeightTable(DigitSet(-1, 1), 3, 1000, 1000), ajsf::BudgetExceeded);
}

TEST_CASE("table agrees with a naive recursion on small 1-d inputs") {
  // Plain depth-limited search; a weight-h representation of |n| <= 64 needs
  // at most 9 columns beyond the top bit.
  const DigitSet ds(-2, 3);
  const ajsf::MinWeightTable table(ds, 1, 64);
  std::function<int(std::int64_t, int)> naive = [&](std::int64_t n, int depth) -> int {
    if (n == 0) return 0;
    if (depth == 0) return 1000;
    int best = 1000;
    for (std::int64_t a = ds.lower(); a <= ds.upper(); ++a) {
      if (ajsf::floor_mod(n - a, 2) != 0) continue;
      best = std::min(best, (a != 0 ? 1 : 0) + naive((n - a) / 2, depth - 1));
    }
    return best;
  };
  for (std::int64_t n = -64; n <= 64; ++n) CHECK(table.weight({n}) == static_cast<std::uint32_t>(naive(n, 10)));
}

TEST_CASE("candidate enumeration finds exactly the AJSF") {
  const DigitSet ds(-2, 3);
  const auto found = ajsf::enumerate_ajsf_candidates({7, 11}, ds, 6);
  REQUIRE(found.size() == 1);
  CHECK(found[0] == ajsf::JointExpansion::from_rows(ds, {{1, 0, 0, -1}, {1, 0, 0, 3}}));
  const auto zero = ajsf::enumerate_ajsf_candidates({0}, ds, 6);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].canonical().length() == 0);
}

TEST_CASE("uniqueness for small scalars") {
  for (const auto& ds : {DigitSet(-1, 1), DigitSet(-2, 3), DigitSet(-3, 11)}) {
    for (std::int64_t n = -64; n <= 64; ++n) {
      const auto found = ajsf::enumerate_ajsf_candidates({n}, ds, 12);
      REQUIRE(found.size() == 1);
      CHECK(found[0] == ajsf::ajsf({n}, ds));
    }
  }
}
