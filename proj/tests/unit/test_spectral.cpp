#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "ajsf/automata.hpp"
#include "ajsf/error.hpp"
#include "ajsf/spectral.hpp"
#include "oracles.hpp"

using ajsf::BigInt;
using ajsf::BivariatePolynomial;
using ajsf::DigitSet;
using ajsf::Rational;

namespace {

BivariatePolynomial wnaf_factor(int w) {
  return BivariatePolynomial::term(1, static_cast<std::size_t>(w), 0) +
         BivariatePolynomial::term(-1, static_cast<std::size_t>(w - 1), 0) +
         BivariatePolynomial::term(-(BigInt(1) << (w - 1)), 0, 1);
}

}  // namespace

TEST_CASE("transition matrices and aggregates") {
  const auto tr = ajsf::ajsf_transducer(DigitSet(-2, 3), 2);
  const auto m = ajsf::transition_matrices(tr);
  REQUIRE(m.size() == 4);
  const auto a = ajsf::adjacency(tr);
  CHECK(ajsf::aggregate(m, 2, 0, 0) == a);
  // Each state has one transition per input, so rows of A(1) sum to 2^d.
  const auto at1 = a.at(1);
  for (std::size_t j = 0; j < a.size(); ++j) {
    BigInt row = 0;
    for (std::size_t k = 0; k < a.size(); ++k) row += at1[j * a.size() + k];
    CHECK(row == 4);
  }
  CHECK_THROWS_AS(ajsf::aggregate(m, 2, 1, 1), ajsf::DomainError);
  for (int d = 1; d <= 3; ++d) {
    const auto md = ajsf::transition_matrices(ajsf::ajsf_transducer(DigitSet(-1, 4), d));
    const std::uint32_t full = (1u << d) - 1;
    for (std::uint32_t c = 0; c <= full; ++c) {
      for (std::uint32_t dd = 0; dd <= full; ++dd) {
        if (c & dd) continue;
        const int free_coords = d - std::popcount(c) - std::popcount(dd);
        CHECK(ajsf::aggregate(md, d, c, dd).row_sum_norm() <= (BigInt(1) << free_coords));
      }
    }
  }
}

TEST_CASE("dimension one aggregates are the single transition matrices") {
  const auto m = ajsf::transition_matrices(ajsf::ajsf_transducer(DigitSet(-3, 11), 1));
  CHECK(ajsf::aggregate(m, 1, 1, 0) == m[0]);
  CHECK(ajsf::aggregate(m, 1, 0, 1) == m[1]);
}

TEST_CASE("adjacency of D_{-2,3}, d=2 is the published matrix up to relabelling") {
  const auto a = ajsf::adjacency(ajsf::ajsf_transducer(DigitSet(-2, 3), 2));
  const auto published = oracle::published_adjacency();
  const auto perm = oracle::find_isomorphism(a, published);
  REQUIRE(perm.has_value());
  CHECK(a.permuted(*perm) == published);
}

TEST_CASE("characteristic polynomial of D_{-2,3}, d=2") {
  const auto a = ajsf::adjacency(ajsf::ajsf_transducer(DigitSet(-2, 3), 2));
  const auto p = ajsf::char_poly(a, ajsf::CharPolySign::negated_identity);
  CHECK(p == oracle::published_char_poly());
  const auto monic = ajsf::char_poly(a);
  CHECK(monic == -p);
  // Independent determinant evaluations.
  for (long x = -3; x <= 3; ++x) {
    for (long z = -2; z <= 2; ++z) CHECK(monic.evaluate(x, z) == Rational(oracle::char_poly_at(a, x, z)));
  }
  // The published matrix has the same polynomial.
  CHECK(ajsf::char_poly(oracle::published_adjacency(), ajsf::CharPolySign::negated_identity) == p);
}

TEST_CASE("characteristic polynomial against Bareiss on random matrices") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    ajsf::SymbolicMatrix a(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        a(j, k) = ajsf::IntPoly{BigInt(static_cast<long>(rng() % 5) - 2), BigInt(static_cast<long>(rng() % 3) - 1)};
      }
    }
    const auto p = ajsf::char_poly(a);
    CHECK(p.degree_x() == static_cast<int>(n));
    for (long x = -2; x <= 2; ++x) {
      for (long z = -1; z <= 2; ++z) CHECK(p.evaluate(x, z) == Rational(oracle::char_poly_at(a, x, z)));
    }
  }
  ajsf::SymbolicMatrix one(1);
  one(0, 0) = ajsf::IntPoly{BigInt(5)};
  CHECK(ajsf::char_poly(one).to_string() == "x - 5");
}

TEST_CASE("constants of D_{-2,3}, d=2") {
  const auto r = ajsf::analyze(DigitSet(-2, 3), 2);
  CHECK(r.e == Rational(32, 89));
  CHECK(r.v == Rational(63200, 2114907));
  CHECK(r.mu0 == 4);
  // Second eigenvalue from the published factors: the largest root modulus
  // of the quintic (other than 4), the cubic, x^2 - 2 and x - 1 at z = 1.
  double beta0 = std::sqrt(2.0);
  const auto quintic = ajsf::numeric_roots({-24, 6, -20, -7, -1, 1});
  const auto cubic = ajsf::numeric_roots({-2, -1, -1, 1});
  for (const auto& z : quintic) {
    if (std::abs(z - 4.0) > 1e-9) beta0 = std::max(beta0, std::abs(z));
  }
  for (const auto& z : cubic) beta0 = std::max(beta0, std::abs(z));
  CHECK(r.beta0 == doctest::Approx(beta0).epsilon(1e-10));
  CHECK(r.delta == doctest::Approx(2.0 - std::log2(beta0)).epsilon(1e-10));
}

TEST_CASE("w-NAF constants and factor") {
  for (int w = 2; w <= 8; ++w) {
    CAPTURE(w);
    const auto a = ajsf::adjacency(ajsf::ajsf_transducer(DigitSet::wnaf(w), 1));
    const auto p = ajsf::char_poly(a);
    const auto x_minus_1 = BivariatePolynomial::term(1, 1, 0) + BivariatePolynomial::term(-1, 0, 0);
    CHECK(p.divisible_by_monic(x_minus_1 * wnaf_factor(w)));
    const auto r = ajsf::dominant_constants(p, 1);
    CHECK(r.e == Rational(1, w + 1));
    Rational v(2, (w + 1) * (w + 1) * (w + 1));
    v.canonicalize();
    CHECK(r.v == v);
  }
  const auto quad = ajsf::dominant_constants(wnaf_factor(2), 1);
  CHECK(quad.e == Rational(1, 3));
  CHECK(quad.v == Rational(2, 27));
  const auto second = ajsf::second_eigenvalue(wnaf_factor(2), 1);
  CHECK(second.beta0 == doctest::Approx(1.0));
  CHECK(second.delta == doctest::Approx(1.0));
}

TEST_CASE("closed forms in dimension one") {
  for (const auto& ds : oracle::all_digit_sets(5)) {
    CAPTURE(ds.name());
    const auto p = ajsf::char_poly(ajsf::adjacency(ajsf::ajsf_transducer(ds, 1)));
    const auto r = ajsf::dominant_constants(p, 1);
    CHECK(r.e == oracle::closed_form_e(ds));
    CHECK(r.v == oracle::closed_form_v(ds));
  }
}

TEST_CASE("dominant constants reject a polynomial without the root 2^d") {
  const auto p = BivariatePolynomial::term(1, 1, 0) + BivariatePolynomial::term(-3, 0, 1);
  CHECK_THROWS_AS(ajsf::dominant_constants(p, 1), ajsf::NumericalError);
}

TEST_CASE("numeric roots") {
  const auto roots = ajsf::numeric_roots({-2, 1, 1});  // z^2 + z - 2
  REQUIRE(roots.size() == 2);
  double lo = std::min(roots[0].real(), roots[1].real());
  double hi = std::max(roots[0].real(), roots[1].real());
  CHECK(lo == doctest::Approx(-2.0));
  CHECK(hi == doctest::Approx(1.0));
}
