#include <doctest.h>

#include <random>

#include "ajsf/automata.hpp"
#include "ajsf/error.hpp"
#include "ajsf/expansion.hpp"
#include "oracles.hpp"

using ajsf::DigitSet;
using ajsf::IntVector;
using ajsf::Transducer;

TEST_CASE("comparison automaton semantics") {
  CHECK(ajsf::compare_accepts(3, 2, 5, 4));
  CHECK_FALSE(ajsf::compare_accepts(1, 1, 1, 2));
  for (std::uint64_t a = 0; a < 256; ++a) {
    for (std::uint64_t b = 0; b < 256; ++b) {
      for (std::uint64_t c = 0; c < 256; c += 3) {
        REQUIRE(ajsf::compare_accepts(a, b, c, 9) == (a + b <= c));
      }
    }
  }
  const auto aut = ajsf::comparison_automaton();
  CHECK(aut.num_states() == 4);
  CHECK(aut.alphabet_size == 8);
}

TEST_CASE("state labels round-trip through text") {
  const auto looping = ajsf::StateLabel::looping(0b01);
  CHECK(looping.to_string(2) == "10");
  const auto block = ajsf::StateLabel::in_block(0b10, 0b01, 2, 0b10);
  const std::string text = block.to_string(2);
  CHECK(ajsf::StateLabel::parse(text, 2) == block);
  CHECK(ajsf::StateLabel::parse(looping.to_string(2), 2) == looping);
  CHECK_THROWS_AS(ajsf::StateLabel::parse("(0,1", 2), ajsf::DomainError);
}

TEST_CASE("1-d transducer of D_{-3,11}") {
  const DigitSet ds(-3, 11);
  const Transducer tr = ajsf::ajsf_transducer_1d(ds);
  CHECK(tr.num_states() < static_cast<std::size_t>(4 * ds.width() - 2));
  CHECK(ajsf::accessible_count(tr, tr.initial()) == tr.num_states());
  CHECK(ajsf::reset_check(tr));
  for (std::int64_t n = 0; n < (1 << 18); ++n) {
    REQUIRE(ajsf::run(tr, {n}) == ajsf::ajsf_weight_1d(n, ds));
  }
  const std::string dot = ajsf::export_dot(tr);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.back() == '\n');
}

TEST_CASE("1-d transducers of every small set") {
  for (const auto& ds : oracle::all_digit_sets(5)) {
    CAPTURE(ds.name());
    const Transducer tr = ajsf::ajsf_transducer_1d(ds);
    CHECK(tr.num_states() < static_cast<std::size_t>(4 * ds.width() - 2));
    CHECK(ajsf::reset_check(tr));
    const Transducer general = ajsf::ajsf_transducer(ds, 1);
    for (std::int64_t n = 0; n < (1 << 12); ++n) {
      REQUIRE(ajsf::run(tr, {n}) == ajsf::ajsf_weight_1d(n, ds));
      REQUIRE(ajsf::run(general, {n}) == ajsf::run(tr, {n}));
    }
  }
}

TEST_CASE("w-NAF transducer counts w-NAF digits") {
  for (int w = 2; w <= 6; ++w) {
    const Transducer tr = ajsf::ajsf_transducer(DigitSet::wnaf(w), 1);
    for (std::int64_t n = 0; n < (1 << 14); ++n) {
      REQUIRE(ajsf::run(tr, {n}) == ajsf::hamming_weight(ajsf::wnaf(n, w)));
    }
  }
}

TEST_CASE("D_{-2,3} in dimension two") {
  const DigitSet ds(-2, 3);
  const Transducer tr = ajsf::ajsf_transducer(ds, 2);
  CHECK(tr.num_states() == 21);
  CHECK(tr.reset_length() == 12);
  CHECK(ajsf::reset_check(tr));
  CHECK(ajsf::run(tr, {7, 11}) == 2);
  CHECK(ajsf::run(tr, {0, 0}) == 0);
  CHECK(tr.initial() == tr.num_states() - 1);
  CHECK(tr.label(tr.initial()).kind == ajsf::StateLabel::Kind::looping);
  CHECK(tr.label(tr.initial()).s == 0);
  for (std::int64_t a = 0; a < 200; ++a) {
    for (std::int64_t b = 0; b < 200; ++b) REQUIRE(ajsf::run(tr, {a, b}) == ajsf::ajsf_weight({a, b}, ds));
  }
}

TEST_CASE("random equivalence and size bounds up to dimension three") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> dist(0, (1 << 12) - 1);
  for (const auto& ds : {DigitSet(-1, 1), DigitSet(0, 1), DigitSet(-2, 3), DigitSet(0, 3), DigitSet(-1, 4),
                         DigitSet(-3, 11), DigitSet(-7, 9)}) {
    for (int d = 1; d <= 3; ++d) {
      CAPTURE(ds.name());
      CAPTURE(d);
      const Transducer tr = ajsf::ajsf_transducer(ds, d);
      CHECK(tr.num_states() < (std::size_t{1} << (3 * d)) * static_cast<std::size_t>(ds.width()));
      CHECK(ajsf::reset_check(tr));
      for (int trial = 0; trial < 2000; ++trial) {
        IntVector n(static_cast<std::size_t>(d));
        for (auto& x : n) x = dist(rng);
        REQUIRE(ajsf::run(tr, n) == ajsf::ajsf_weight(n, ds));
      }
    }
  }
}

TEST_CASE("general construction in dimension one matches the 1-d construction") {
  for (const auto& ds : {DigitSet(-1, 1), DigitSet(-2, 3), DigitSet(-3, 11), DigitSet(0, 5)}) {
    const Transducer a = ajsf::ajsf_transducer(ds, 1);
    const Transducer b = ajsf::ajsf_transducer_1d(ds);
    for (std::int64_t n = 0; n < (1 << 16); ++n) REQUIRE(ajsf::run(a, {n}) == ajsf::run(b, {n}));
  }
}

TEST_CASE("state budget") {
  CHECK_THROWS_AS(ajsf::ajsf_transducer(DigitSet(-2, 3), 3, 100), ajsf::BudgetExceeded);
  CHECK_THROWS_AS(ajsf::ajsf_transducer(DigitSet(-2, 3), 0), ajsf::DomainError);
}

TEST_CASE("reset check on mutated transducers") {
  const Transducer tr = ajsf::ajsf_transducer(DigitSet(-2, 3), 2);
  // Follows the zero input by hand.
  auto resets = [](const Transducer& t) {
    for (std::size_t q = 0; q < t.num_states(); ++q) {
      std::size_t cur = q;
      for (int i = 0; i < t.reset_length(); ++i) cur = t.transition(cur, 0).target;
      if (cur != t.initial()) return false;
    }
    return true;
  };
  std::mt19937_64 rng(3);
  int caught = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Transducer mutant = tr;
    const std::size_t q = rng() % tr.num_states();
    const std::uint32_t input = static_cast<std::uint32_t>(rng() % tr.num_inputs());
    mutant.set_transition(q, input, {static_cast<std::size_t>(rng() % tr.num_states()), 0});
    const bool ok = ajsf::reset_check(mutant);
    REQUIRE(ok == resets(mutant));
    caught += ok ? 0 : 1;
  }
  CHECK(caught > 0);
  // The zero loop of the initial state is what every reset path ends in.
  Transducer broken = tr;
  broken.set_transition(tr.initial(), 0, {0, 0});
  CHECK_FALSE(ajsf::reset_check(broken));
  CHECK(ajsf::reset_check(ajsf::identity_transducer()));
}

TEST_CASE("identity transducer DOT") {
  const std::string dot = ajsf::export_dot(ajsf::identity_transducer());
  CHECK(dot ==
        "digraph transducer {\n"
        "  \"0\" [shape=doublecircle];\n"
        "  \"0\" -> \"0\" [label=\"0|0,1|1\"];\n"
        "}\n");
}

TEST_CASE("JSON round trip preserves runs") {
  for (int d = 1; d <= 2; ++d) {
    const Transducer tr = ajsf::ajsf_transducer(DigitSet(-2, 3), d);
    const Transducer back = ajsf::transducer_from_json(ajsf::to_json(tr));
    CHECK(back == tr);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
      IntVector n(static_cast<std::size_t>(d));
      for (auto& x : n) x = static_cast<std::int64_t>(rng() % 100000);
      REQUIRE(ajsf::run(back, n) == ajsf::run(tr, n));
    }
  }
  CHECK_THROWS_AS(ajsf::transducer_from_json("{\"dimension\":1}"), ajsf::DomainError);
}

TEST_CASE("runs reject negative inputs") {
  CHECK_THROWS_AS(ajsf::run(ajsf::ajsf_transducer(DigitSet(-1, 1), 1), {-3}), ajsf::DomainError);
}

TEST_CASE("reset additivity of the weight") {
  std::mt19937_64 rng(19);
  for (const auto& ds : {DigitSet(-1, 1), DigitSet(-2, 3), DigitSet(0, 3), DigitSet(-3, 11)}) {
    const int shift = 4 * ds.width();
    for (int trial = 0; trial < 2000; ++trial) {
      const int p = static_cast<int>(rng() % 16);
      const std::int64_t n = static_cast<std::int64_t>(rng() % (1 << 16));
      const std::int64_t m = static_cast<std::int64_t>(rng() % (std::uint64_t{1} << p));
      const std::int64_t joined = (n << (p + shift)) + m;
      REQUIRE(ajsf::ajsf_weight_1d(joined, ds) == ajsf::ajsf_weight_1d(n, ds) + ajsf::ajsf_weight_1d(m, ds));
    }
  }
}
