#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ajsf/digit_set.hpp"
#include "ajsf/numeric.hpp"

namespace ajsf {

// ---------------------------------------------------------------------------
// Comparison automaton
// ---------------------------------------------------------------------------

/// State (s, t) of the three-integer comparison automaton: s is the pending
/// carry of a + b, t records whether (a + b) mod 2^i > c mod 2^i after i
/// digits.
struct CompareState {
  int s = 0;
  int t = 0;

  bool operator==(const CompareState&) const = default;
};

/// One transition on the input digit triple (alpha, beta, gamma):
/// s' = floor((alpha + beta + s) / 2), t' = [(alpha + beta + s) mod 2 > gamma - t].
constexpr CompareState compare_step(CompareState q, int alpha, int beta, int gamma) {
  const int sum = alpha + beta + q.s;
  return {sum / 2, (sum % 2) > (gamma - q.t) ? 1 : 0};
}

/// Deterministic complete automaton over an alphabet of small integers.
struct Automaton {
  std::vector<std::string> labels;
  std::size_t alphabet_size = 0;
  std::vector<std::size_t> table;  // table[state * alphabet_size + symbol]
  std::size_t initial = 0;
  std::vector<bool> accepting;

  std::size_t num_states() const { return labels.size(); }
  std::size_t next(std::size_t state, std::size_t symbol) const {
    return table[state * alphabet_size + symbol];
  }
  bool accepts(const std::vector<std::size_t>& word) const;
};

/// The 4-state comparison automaton. State index 2*s + t; symbol index
/// alpha + 2*beta + 4*gamma; initial and only accepting state (0,0).
Automaton comparison_automaton();

/// Feeds equal-length (`length` digits, LSB first) binary expansions of a, b, c
/// into the comparison automaton; accepts iff a + b <= c.
bool compare_accepts(std::uint64_t a, std::uint64_t b, std::uint64_t c, int length);

// ---------------------------------------------------------------------------
// Hamming-weight transducers
// ---------------------------------------------------------------------------

/// Label of a transducer state. Looping states carry only s in {0,1}^d;
/// block states are (s, t)_row^block with row in 1..w-1 and block a proper
/// subset C of the coordinates. Vectors and sets are bitmasks, coordinate j
/// (1-based) at bit j-1.
struct StateLabel {
  enum class Kind : std::uint8_t { looping, block };

  Kind kind = Kind::looping;
  std::uint32_t s = 0;
  std::uint32_t t = 0;
  int row = 0;
  std::uint32_t block = 0;

  static StateLabel looping(std::uint32_t s) { return {Kind::looping, s, 0, 0, 0}; }
  static StateLabel in_block(std::uint32_t s, std::uint32_t t, int row, std::uint32_t block) {
    return {Kind::block, s, t, row, block};
  }

  /// Looping: "01" (s_1 s_2). Block: "(01,10)_2^{2}" with C listed 1-based.
  std::string to_string(int dimension) const;
  /// Inverse of to_string; throws DomainError on malformed text.
  static StateLabel parse(std::string_view text, int dimension);

  auto operator<=>(const StateLabel&) const = default;
};

struct Transition {
  std::size_t target = 0;
  int output = 0;

  bool operator==(const Transition&) const = default;
};

/// Deterministic, input-complete transducer reading joint binary digits
/// (inputs eps in {0,1}^d encoded as bitmasks) and writing one output bit per
/// input. The weight of an input is the number of 1 outputs.
class Transducer {
 public:
  /// `table[state * 2^d + input]`. Throws DomainError on inconsistent sizes or
  /// out-of-range targets.
  Transducer(int dimension, int reset_length, std::vector<StateLabel> labels,
             std::vector<Transition> table, std::size_t initial);

  int dimension() const { return dim_; }
  std::size_t num_inputs() const { return std::size_t{1} << dim_; }
  std::size_t num_states() const { return labels_.size(); }
  std::size_t initial() const { return initial_; }
  /// Length k of the padding word 0^k appended by run().
  int reset_length() const { return reset_length_; }

  const StateLabel& label(std::size_t state) const { return labels_[state]; }
  const std::vector<StateLabel>& labels() const { return labels_; }
  const Transition& transition(std::size_t state, std::uint32_t input) const {
    return table_[state * num_inputs() + input];
  }
  const std::vector<Transition>& table() const { return table_; }

  /// Re-target one transition; used to build mutants in tests.
  void set_transition(std::size_t state, std::uint32_t input, Transition tr);

  bool operator==(const Transducer&) const = default;

 private:
  int dim_;
  int reset_length_;
  std::vector<StateLabel> labels_;
  std::vector<Transition> table_;
  std::size_t initial_;
};

/// Transducer for the weight of the 1-dimensional AJSF over `ds`, built from
/// its five transition rules and restricted to states accessible from 0.
/// Has fewer than 4w - 2 states.
Transducer ajsf_transducer_1d(const DigitSet& ds);

/// Transducer for the weight of the d-dimensional AJSF over `ds`: a
/// provisional machine (looping states plus one comparison block) extended by
/// blocks (s,t)_i^C for C a proper subset of {1..d} that remember which
/// coordinates may still have their nonunique digit changed. Restricted to
/// accessible states; fewer than 8^d * w states; 0^{4w} is a reset word.
///
/// Throws BudgetExceeded if the unrestricted state count exceeds
/// `state_budget`.
Transducer ajsf_transducer(const DigitSet& ds, int dimension,
                           std::size_t state_budget = std::size_t{1} << 22);

struct RunResult {
  std::size_t weight = 0;
  std::size_t final_state = 0;
};

/// Feeds the joint binary expansion of n (LSB first, all coordinates padded
/// to the longest) followed by 0^{reset_length}. Requires n >= 0.
RunResult run_detailed(const Transducer& tr, const IntVector& n);

/// Weight computed by the transducer; run_detailed(tr, n).weight.
std::size_t run(const Transducer& tr, const IntVector& n);

/// True iff 0^{reset_length} leads every state to the initial state.
bool reset_check(const Transducer& tr);

/// Number of states of the transducer accessible from `from`.
std::size_t accessible_count(const Transducer& tr, std::size_t from);

/// Graphviz text. Node ids are the state labels; parallel edges are merged
/// into one edge labelled "in|out,in|out". Deterministic.
std::string export_dot(const Transducer& tr);

/// {"dimension":d,"reset_length":k,"states":[labels],"initial":i,
///  "transitions":[{"from":i,"input":"01","output":o,"to":j}, ...]}.
/// Inputs are written eps_1 eps_2 ... eps_d.
std::string to_json(const Transducer& tr);
Transducer transducer_from_json(std::string_view text);

/// Single-state transducer copying its input bit (d = 1).
Transducer identity_transducer();

}  // namespace ajsf
