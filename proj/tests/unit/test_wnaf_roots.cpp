#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "ajsf/automata.hpp"
#include "ajsf/error.hpp"
#include "ajsf/spectral.hpp"
#include "ajsf/wnaf_roots.hpp"

using ajsf::DigitSet;

TEST_CASE("w = 2 factorises") {
  const auto rep = ajsf::find_roots(2);
  REQUIRE(rep.roots.size() == 2);
  CHECK(std::abs(rep.roots[0].z - 1.0) < 1e-12);
  CHECK(std::abs(rep.roots[1].z + 2.0) < 1e-12);
  CHECK(std::abs(rep.roots[1].eigenvalue + 1.0) < 1e-12);
  CHECK(rep.beta0 == doctest::Approx(1.0));
  CHECK(rep.delta == doctest::Approx(1.0));
  CHECK(ajsf::delta_of(2) == doctest::Approx(1.0));
}

TEST_CASE("one root per sector with small residuals") {
  for (int w = 2; w <= 200; ++w) {
    CAPTURE(w);
    const auto rep = ajsf::find_roots(w);
    REQUIRE(rep.roots.size() == static_cast<std::size_t>(w));
    CHECK(rep.fallback == (w < 8));
    for (int k = 0; k < w; ++k) {
      const auto& r = rep.roots[static_cast<std::size_t>(k)];
      CHECK(r.k == k);
      CHECK(r.residual < 1e-10);
      CHECK(std::abs(std::pow(r.z, w) + r.z - 2.0) < 1e-10);
    }
    // Distinct roots.
    for (int a = 0; a < w; ++a) {
      for (int b = a + 1; b < w; ++b) {
        CHECK(std::abs(rep.roots[static_cast<std::size_t>(a)].z - rep.roots[static_cast<std::size_t>(b)].z) > 1e-8);
      }
    }
  }
  CHECK_THROWS_AS(ajsf::find_roots(1), ajsf::DomainError);
}

TEST_CASE("asymptotic expansion of the first root") {
  // The two-term expansion is off by O(1/w^3): the error shrinks eightfold
  // when w doubles and stays on the (2 pi)^3 / w^3 scale.
  auto error = [](int w) {
    const double pi = std::numbers::pi;
    const double ww = w;
    const std::complex<double> approx(1.0 - 2.0 * pi * pi / (ww * ww), 2.0 * pi / ww - 2.0 * pi / (ww * ww));
    return std::abs(ajsf::find_roots(w).roots[1].z - approx);
  };
  const double e100 = error(100);
  const double e200 = error(200);
  CHECK(e100 * 1e6 < std::pow(2.0 * std::numbers::pi, 3));
  CHECK(e200 / e100 == doctest::Approx(0.125).epsilon(0.1));
}

TEST_CASE("second eigenvalue agrees with the transducer spectrum") {
  for (int w = 2; w <= 8; ++w) {
    const auto p = ajsf::char_poly(ajsf::adjacency(ajsf::ajsf_transducer(DigitSet::wnaf(w), 1)));
    const auto s = ajsf::second_eigenvalue(p, 1);
    CHECK(ajsf::find_roots(w).beta0 == doctest::Approx(std::max(s.beta0, 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("spectral gap bound and decay") {
  const int threshold = ajsf::delta_bound_threshold(200);
  CHECK(threshold <= 30);
  for (int w = threshold; w <= 200; ++w) CHECK(ajsf::delta_of(w) >= ajsf::delta_lower_bound(w));
  const double slope = ajsf::delta_decay_exponent(30, 200);
  CHECK(std::fabs(slope + 3.0) <= 0.1);
  CHECK_THROWS_AS(ajsf::delta_decay_exponent(10, 10), ajsf::DomainError);
}
