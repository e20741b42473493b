#include "ajsf/automata.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ajsf/error.hpp"

namespace ajsf {

// ---------------------------------------------------------------------------
// Comparison automaton
// ---------------------------------------------------------------------------

bool Automaton::accepts(const std::vector<std::size_t>& word) const {
  std::size_t q = initial;
  for (auto sym : word) {
    if (sym >= alphabet_size) throw DomainError("symbol outside the alphabet");
    q = next(q, sym);
  }
  return accepting[q];
}

Automaton comparison_automaton() {
  Automaton a;
  a.alphabet_size = 8;
  a.initial = 0;
  a.accepting = {true, false, false, false};
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) a.labels.push_back("(" + std::to_string(s) + "," + std::to_string(t) + ")");
  }
  a.table.resize(4 * 8);
  for (int q = 0; q < 4; ++q) {
    for (int sym = 0; sym < 8; ++sym) {
      const CompareState next = compare_step({q / 2, q % 2}, sym & 1, (sym >> 1) & 1, (sym >> 2) & 1);
      a.table[static_cast<std::size_t>(q * 8 + sym)] = static_cast<std::size_t>(2 * next.s + next.t);
    }
  }
  return a;
}

bool compare_accepts(std::uint64_t a, std::uint64_t b, std::uint64_t c, int length) {
  if (length < 0 || length > 64) throw DomainError("word length must be in [0, 64]");
  std::vector<std::size_t> word;
  word.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    word.push_back(((a >> i) & 1) | (((b >> i) & 1) << 1) | (((c >> i) & 1) << 2));
  }
  return comparison_automaton().accepts(word);
}

// ---------------------------------------------------------------------------
// Labels
// ---------------------------------------------------------------------------

namespace {

std::string bits_string(std::uint32_t mask, int dimension) {
  std::string s;
  for (int j = 0; j < dimension; ++j) s.push_back(((mask >> j) & 1) ? '1' : '0');
  return s;
}

std::uint32_t parse_bits(std::string_view text, int dimension) {
  if (static_cast<int>(text.size()) != dimension) throw DomainError("label has wrong dimension");
  std::uint32_t mask = 0;
  for (int j = 0; j < dimension; ++j) {
    const char c = text[static_cast<std::size_t>(j)];
    if (c != '0' && c != '1') throw DomainError("label bit must be 0 or 1");
    if (c == '1') mask |= 1U << j;
  }
  return mask;
}

int parse_int(std::string_view text) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) throw DomainError("malformed label number");
  return v;
}

void check_dimension(int dimension) {
  if (dimension < 1 || dimension > 16) throw DomainError("dimension must be in [1, 16]");
}

}  // namespace

std::string StateLabel::to_string(int dimension) const {
  if (kind == Kind::looping) return bits_string(s, dimension);
  std::string out = "(" + bits_string(s, dimension) + "," + bits_string(t, dimension) + ")_" +
                    std::to_string(row) + "^{";
  bool first = true;
  for (int j = 0; j < dimension; ++j) {
    if ((block >> j) & 1) {
      if (!first) out.push_back(',');
      out += std::to_string(j + 1);
      first = false;
    }
  }
  out.push_back('}');
  return out;
}

StateLabel StateLabel::parse(std::string_view text, int dimension) {
  check_dimension(dimension);
  if (text.empty() || text.front() != '(') return looping(parse_bits(text, dimension));
  const auto comma = text.find(',');
  const auto close = text.find(")_");
  const auto caret = text.find("^{");
  if (comma == std::string_view::npos || close == std::string_view::npos ||
      caret == std::string_view::npos || text.back() != '}' || !(comma < close && close < caret)) {
    throw DomainError("malformed state label '" + std::string(text) + "'");
  }
  StateLabel lab;
  lab.kind = Kind::block;
  lab.s = parse_bits(text.substr(1, comma - 1), dimension);
  lab.t = parse_bits(text.substr(comma + 1, close - comma - 1), dimension);
  lab.row = parse_int(text.substr(close + 2, caret - close - 2));
  std::string_view members = text.substr(caret + 2, text.size() - caret - 3);
  while (!members.empty()) {
    const auto sep = members.find(',');
    const int j = parse_int(members.substr(0, sep));
    if (j < 1 || j > dimension) throw DomainError("block coordinate out of range");
    lab.block |= 1U << (j - 1);
    members = sep == std::string_view::npos ? std::string_view{} : members.substr(sep + 1);
  }
  return lab;
}

// ---------------------------------------------------------------------------
// Transducer
// ---------------------------------------------------------------------------

Transducer::Transducer(int dimension, int reset_length, std::vector<StateLabel> labels,
                       std::vector<Transition> table, std::size_t initial)
    : dim_(dimension),
      reset_length_(reset_length),
      labels_(std::move(labels)),
      table_(std::move(table)),
      initial_(initial) {
  check_dimension(dim_);
  if (reset_length_ < 0) throw DomainError("reset length must be non-negative");
  if (labels_.empty() || initial_ >= labels_.size()) throw DomainError("initial state out of range");
  if (table_.size() != labels_.size() * num_inputs()) throw DomainError("transition table has wrong size");
  for (const auto& tr : table_) {
    if (tr.target >= labels_.size()) throw DomainError("transition target out of range");
    if (tr.output != 0 && tr.output != 1) throw DomainError("transition output must be 0 or 1");
  }
}

void Transducer::set_transition(std::size_t state, std::uint32_t input, Transition tr) {
  if (state >= num_states() || input >= num_inputs() || tr.target >= num_states()) {
    throw DomainError("transition index out of range");
  }
  table_[state * num_inputs() + input] = tr;
}

namespace {

// Dense numbering of every label of the d-dimensional machine: looping states
// first, then (block, row, t, s) in row-major order.
class LabelSpace {
 public:
  LabelSpace(int dimension, int width) : d_(dimension), w_(width), cube_(std::size_t{1} << dimension) {}

  std::size_t size() const { return cube_ + (cube_ - 1) * static_cast<std::size_t>(w_ - 1) * cube_ * cube_; }

  std::size_t index(const StateLabel& lab) const {
    if (lab.kind == StateLabel::Kind::looping) return lab.s;
    return cube_ + ((static_cast<std::size_t>(lab.block) * static_cast<std::size_t>(w_ - 1) +
                     static_cast<std::size_t>(lab.row - 1)) * cube_ + lab.t) * cube_ + lab.s;
  }

  StateLabel label(std::size_t idx) const {
    if (idx < cube_) return StateLabel::looping(static_cast<std::uint32_t>(idx));
    idx -= cube_;
    const auto s = static_cast<std::uint32_t>(idx % cube_);
    idx /= cube_;
    const auto t = static_cast<std::uint32_t>(idx % cube_);
    idx /= cube_;
    const int row = static_cast<int>(idx % static_cast<std::size_t>(w_ - 1)) + 1;
    const auto block = static_cast<std::uint32_t>(idx / static_cast<std::size_t>(w_ - 1));
    return StateLabel::in_block(s, t, row, block);
  }

 private:
  int d_;
  int w_;
  std::size_t cube_;
};

// Keeps the states reachable from `initial` (breadth-first order, initial
// moved to the end) and renumbers the table.
Transducer restrict_accessible(int dimension, int reset_length, const std::vector<StateLabel>& labels,
                               const std::vector<Transition>& table, std::size_t initial) {
  const std::size_t inputs = std::size_t{1} << dimension;
  std::vector<std::size_t> order{initial};
  std::vector<std::size_t> rank(labels.size(), SIZE_MAX);
  rank[initial] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t e = 0; e < inputs; ++e) {
      const std::size_t next = table[order[head] * inputs + e].target;
      if (rank[next] == SIZE_MAX) {
        rank[next] = order.size();
        order.push_back(next);
      }
    }
  }
  std::rotate(order.begin(), order.begin() + 1, order.end());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;

  std::vector<StateLabel> new_labels;
  std::vector<Transition> new_table;
  new_labels.reserve(order.size());
  new_table.reserve(order.size() * inputs);
  for (auto old : order) {
    new_labels.push_back(labels[old]);
    for (std::size_t e = 0; e < inputs; ++e) {
      const Transition& tr = table[old * inputs + e];
      new_table.push_back({rank[tr.target], tr.output});
    }
  }
  return Transducer(dimension, reset_length, std::move(new_labels), std::move(new_table), order.size() - 1);
}

}  // namespace

Transducer ajsf_transducer_1d(const DigitSet& ds) {
  const int w = ds.width();
  const int start_t = ds.tilde_u() == -1 ? 1 : 0;
  const LabelSpace space(1, w);
  std::vector<StateLabel> labels(space.size());
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = space.label(k);
  std::vector<Transition> table(labels.size() * 2);

  auto start = [&](int s, int eps) {
    const CompareState q = compare_step({s, start_t}, eps, ds.l_bit(0), ds.u_bit(0));
    return space.index(StateLabel::in_block(static_cast<std::uint32_t>(q.s), static_cast<std::uint32_t>(q.t), 1, 0));
  };

  for (std::size_t k = 0; k < labels.size(); ++k) {
    const StateLabel& lab = labels[k];
    const int s = static_cast<int>(lab.s);
    const int t = static_cast<int>(lab.t);
    for (int eps = 0; eps < 2; ++eps) {
      Transition& tr = table[k * 2 + static_cast<std::size_t>(eps)];
      if (lab.kind == StateLabel::Kind::looping) {
        tr = eps == s ? Transition{k, 0} : Transition{start(s, eps), 1};
      } else if (lab.row < w - 1) {
        const CompareState q = compare_step({s, t}, eps, ds.l_bit(lab.row), ds.u_bit(lab.row));
        tr = {space.index(StateLabel::in_block(static_cast<std::uint32_t>(q.s), static_cast<std::uint32_t>(q.t),
                                               lab.row + 1, 0)),
              0};
      } else if (t == 0 || (eps + s) % 2 == 0) {
        tr = {static_cast<std::size_t>((eps + s) / 2), 0};
      } else {
        tr = {start(s, eps), 1};
      }
    }
  }
  return restrict_accessible(1, 4 * w, labels, table, 0);
}

Transducer ajsf_transducer(const DigitSet& ds, int dimension, std::size_t state_budget) {
  check_dimension(dimension);
  const int w = ds.width();
  const std::uint32_t full = (1U << dimension) - 1;
  const std::uint32_t inputs = full + 1;
  const bool u_below_half = ds.upper() < ds.half();
  const std::uint32_t start_t = ds.tilde_u() == -1 ? full : 0;

  // Guard the size computation itself against overflow.
  const long double estimate = static_cast<long double>(inputs) * inputs * inputs * static_cast<long double>(w);
  if (estimate > static_cast<long double>(state_budget)) {
    throw BudgetExceeded("transducer for d=" + std::to_string(dimension) + ", w=" + std::to_string(w) +
                         " exceeds the state budget");
  }
  const LabelSpace space(dimension, w);
  if (space.size() > state_budget) throw BudgetExceeded("transducer exceeds the state budget");

  std::vector<StateLabel> labels(space.size());
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = space.label(k);
  std::vector<Transition> table(labels.size() * inputs);

  // Coordinatewise comparison step on bit `row` of the shifted bounds.
  auto step = [&](std::uint32_t s, std::uint32_t t, std::uint32_t eps, int bit) {
    std::uint32_t s2 = 0, t2 = 0;
    for (int j = 0; j < dimension; ++j) {
      const CompareState q = compare_step({static_cast<int>((s >> j) & 1), static_cast<int>((t >> j) & 1)},
                                          static_cast<int>((eps >> j) & 1), ds.l_bit(bit), ds.u_bit(bit));
      s2 |= static_cast<std::uint32_t>(q.s) << j;
      t2 |= static_cast<std::uint32_t>(q.t) << j;
    }
    return std::pair{s2, t2};
  };
  // Coordinates whose next carried bit disagrees with bit `bit` of tilde_v.
  auto mismatch = [&](std::uint32_t s, std::uint32_t eps, int bit) {
    const std::uint32_t l_mask = ds.l_bit(bit) ? full : 0;
    const std::uint32_t v_mask = ds.v_bit(bit) ? full : 0;
    return (s ^ eps ^ l_mask ^ v_mask) & full;
  };
  // Last-row rule of block empty-set, shared by the other blocks via substitution.
  auto end_of_block = [&](std::uint32_t s, std::uint32_t t, std::uint32_t eps) -> Transition {
    if ((t & (s ^ eps)) == 0) return {space.index(StateLabel::looping(s & eps)), 0};
    const auto [s2, t2] = step(s, start_t, eps, 0);
    const std::uint32_t block = ~mismatch(s, eps, 0) & ~t & full;
    return {space.index(StateLabel::in_block(s2, t2, 1, block)), 1};
  };

  for (std::size_t k = 0; k < labels.size(); ++k) {
    const StateLabel& lab = labels[k];
    for (std::uint32_t eps = 0; eps < inputs; ++eps) {
      Transition& tr = table[k * inputs + eps];
      if (lab.kind == StateLabel::Kind::looping) {
        if (eps == lab.s) {
          tr = {k, 0};
        } else {
          const auto [s2, t2] = step(lab.s, start_t, eps, 0);
          tr = {space.index(StateLabel::in_block(s2, t2, 1, 0)), 1};
        }
      } else if (lab.row < w - 1) {
        const auto [s2, t2] = step(lab.s, lab.t, eps, lab.row);
        const std::uint32_t block = lab.block & ~mismatch(lab.s, eps, lab.row);
        tr = {space.index(StateLabel::in_block(s2, t2, lab.row + 1, block)), 0};
      } else {
        const std::uint32_t c = lab.block;
        const std::uint32_t s_sub = (lab.s & ~c) | (u_below_half ? c : 0);
        const std::uint32_t t_sub = lab.t & ~c;
        tr = end_of_block(s_sub, t_sub, eps);
      }
    }
  }
  return restrict_accessible(dimension, 4 * w, labels, table, 0);
}

RunResult run_detailed(const Transducer& tr, const IntVector& n) {
  if (n.size() != static_cast<std::size_t>(tr.dimension())) throw DomainError("input dimension mismatch");
  int len = 0;
  for (auto x : n) {
    if (x < 0) throw DomainError("transducer input must be non-negative");
    len = std::max(len, static_cast<int>(std::bit_width(static_cast<std::uint64_t>(x))));
  }
  RunResult r{0, tr.initial()};
  for (int i = 0; i < len + tr.reset_length(); ++i) {
    std::uint32_t eps = 0;
    if (i < len) {
      for (std::size_t j = 0; j < n.size(); ++j) eps |= static_cast<std::uint32_t>((n[j] >> i) & 1) << j;
    }
    const Transition& t = tr.transition(r.final_state, eps);
    r.weight += static_cast<std::size_t>(t.output);
    r.final_state = t.target;
  }
  return r;
}

std::size_t run(const Transducer& tr, const IntVector& n) { return run_detailed(tr, n).weight; }

bool reset_check(const Transducer& tr) {
  for (std::size_t q = 0; q < tr.num_states(); ++q) {
    std::size_t cur = q;
    for (int i = 0; i < tr.reset_length(); ++i) cur = tr.transition(cur, 0).target;
    if (cur != tr.initial()) return false;
  }
  return true;
}

std::size_t accessible_count(const Transducer& tr, std::size_t from) {
  if (from >= tr.num_states()) throw DomainError("state out of range");
  std::vector<bool> seen(tr.num_states(), false);
  std::vector<std::size_t> stack{from};
  seen[from] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t q = stack.back();
    stack.pop_back();
    for (std::uint32_t e = 0; e < tr.num_inputs(); ++e) {
      const std::size_t next = tr.transition(q, e).target;
      if (!seen[next]) {
        seen[next] = true;
        ++count;
        stack.push_back(next);
      }
    }
  }
  return count;
}

std::string export_dot(const Transducer& tr) {
  const int d = tr.dimension();
  std::ostringstream os;
  os << "digraph transducer {\n";
  for (std::size_t q = 0; q < tr.num_states(); ++q) {
    os << "  \"" << tr.label(q).to_string(d) << "\" [shape=" << (q == tr.initial() ? "doublecircle" : "circle")
       << "];\n";
  }
  for (std::size_t q = 0; q < tr.num_states(); ++q) {
    // Targets in order of first appearance, each with its merged edge label.
    std::vector<std::pair<std::size_t, std::string>> edges;
    for (std::uint32_t e = 0; e < tr.num_inputs(); ++e) {
      const Transition& t = tr.transition(q, e);
      const std::string part = bits_string(e, d) + "|" + std::to_string(t.output);
      auto it = std::find_if(edges.begin(), edges.end(), [&](const auto& p) { return p.first == t.target; });
      if (it == edges.end()) {
        edges.emplace_back(t.target, part);
      } else {
        it->second += "," + part;
      }
    }
    for (const auto& [target, text] : edges) {
      os << "  \"" << tr.label(q).to_string(d) << "\" -> \"" << tr.label(target).to_string(d) << "\" [label=\""
         << text << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_json(const Transducer& tr) {
  const int d = tr.dimension();
  nlohmann::ordered_json j;
  j["dimension"] = d;
  j["reset_length"] = tr.reset_length();
  auto& states = j["states"] = nlohmann::ordered_json::array();
  for (const auto& lab : tr.labels()) states.push_back(lab.to_string(d));
  j["initial"] = tr.initial();
  auto& trans = j["transitions"] = nlohmann::ordered_json::array();
  for (std::size_t q = 0; q < tr.num_states(); ++q) {
    for (std::uint32_t e = 0; e < tr.num_inputs(); ++e) {
      const Transition& t = tr.transition(q, e);
      trans.push_back({{"from", q}, {"input", bits_string(e, d)}, {"output", t.output}, {"to", t.target}});
    }
  }
  return j.dump();
}

Transducer transducer_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const int d = j.at("dimension").get<int>();
    check_dimension(d);
    std::vector<StateLabel> labels;
    for (const auto& s : j.at("states")) labels.push_back(StateLabel::parse(s.get<std::string>(), d));
    const std::size_t inputs = std::size_t{1} << d;
    std::vector<Transition> table(labels.size() * inputs);
    std::vector<bool> filled(table.size(), false);
    for (const auto& t : j.at("transitions")) {
      const auto from = t.at("from").get<std::size_t>();
      const auto input = parse_bits(t.at("input").get<std::string>(), d);
      if (from >= labels.size()) throw DomainError("transition source out of range");
      const std::size_t slot = from * inputs + input;
      if (filled[slot]) throw DomainError("duplicate transition");
      filled[slot] = true;
      table[slot] = {t.at("to").get<std::size_t>(), t.at("output").get<int>()};
    }
    if (std::find(filled.begin(), filled.end(), false) != filled.end()) {
      throw DomainError("transducer JSON is not input-complete");
    }
    return Transducer(d, j.at("reset_length").get<int>(), std::move(labels), std::move(table),
                      j.at("initial").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed transducer JSON: ") + e.what());
  }
}

Transducer identity_transducer() {
  return Transducer(1, 1, {StateLabel::looping(0)}, {{0, 0}, {0, 1}}, 0);
}

}  // namespace ajsf
