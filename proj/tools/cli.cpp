#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ajsf/automata.hpp"
#include "ajsf/digit_set.hpp"
#include "ajsf/error.hpp"
#include "ajsf/expansion.hpp"
#include "ajsf/oracle.hpp"
#include "ajsf/spectral.hpp"
#include "ajsf/statistics.hpp"
#include "ajsf/wnaf_roots.hpp"

namespace ajsf::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

/// Options shared by the subcommands; each subcommand registers the subset
/// it understands.
struct Options {
  std::optional<std::int64_t> l;
  std::optional<std::int64_t> u;
  std::optional<int> wnaf;
  std::optional<int> d;
  std::vector<std::int64_t> values;
  std::vector<std::string> rows;
  std::uint64_t nmax = 0;
  std::uint64_t budget = std::uint64_t{1} << 24;
  unsigned jobs = 0;
  std::string out_path;
  bool as_json = false;
  bool as_dot = false;
  bool as_csv = false;
  bool charpoly = false;
  bool a_minus_x = false;
  bool empirical = false;
  int kmin = 8;
  int kmax = 16;
  int per_octave = 1;
  int w = 0;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

void add_digit_set(CLI::App* sub, Options& o) {
  sub->add_option("--l", o.l, "lower digit bound l <= 0");
  sub->add_option("--u", o.u, "upper digit bound u >= 1");
  sub->add_option("--wnaf", o.wnaf, "use the symmetric w-NAF digit set of this width instead of --l/--u");
}

void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out_path, "also write the output to this file (plus PATH.manifest.json)");
}

NormalizedDigitSet resolve_digits(const Options& o) {
  if (o.wnaf) {
    if (o.l || o.u) throw DomainError("--wnaf cannot be combined with --l/--u");
    return {DigitSet::wnaf(*o.wnaf), false};
  }
  if (!o.l || !o.u) throw DomainError("a digit set needs both --l and --u (or --wnaf)");
  return DigitSet::create(*o.l, *o.u);
}

// Digit sets used with non-negative inputs (transducers, statistics) must
// already be normalized.
DigitSet require_normalized(const Options& o) {
  const auto nd = resolve_digits(o);
  if (nd.negated) {
    throw DomainError("digit set with l <= -2^(w-1) is only supported by expand/weight/validate; use D_{" +
                      std::to_string(-*o.u) + "," + std::to_string(-*o.l) + "}");
  }
  return nd.set;
}

int resolve_dimension(const Options& o) {
  if (!o.values.empty()) {
    if (o.d && static_cast<std::size_t>(*o.d) != o.values.size()) {
      throw DomainError("--d " + std::to_string(*o.d) + " does not match the " + std::to_string(o.values.size()) +
                        " given vector components");
    }
    return static_cast<int>(o.values.size());
  }
  const int d = o.d.value_or(1);
  if (d < 1) throw DomainError("--d must be >= 1");
  return d;
}

IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

// Rows, most significant digit first, of the expansion multiplied by `sign`.
std::vector<IntVector> signed_rows(const JointExpansion& e, int sign) {
  std::vector<IntVector> rows(e.dimension());
  for (std::size_t i = 0; i < e.dimension(); ++i) {
    for (std::size_t j = e.length(); j-- > 0;) rows[i].push_back(sign * e.digit(i, j));
  }
  return rows;
}

json parameters(const Options& o, const std::string& subcommand) {
  json p = json::object();
  if (o.l) p["l"] = *o.l;
  if (o.u) p["u"] = *o.u;
  if (o.wnaf) p["wnaf"] = *o.wnaf;
  if (o.d) p["d"] = *o.d;
  if (!o.values.empty()) p["values"] = o.values;
  if (!o.rows.empty()) p["rows"] = o.rows;
  if (o.nmax) p["nmax"] = o.nmax;
  if (subcommand == "fluctuation") {
    p["kmin"] = o.kmin;
    p["kmax"] = o.kmax;
    p["per_octave"] = o.per_octave;
  }
  if (subcommand == "wnaf-roots") p["w"] = o.w;
  if (o.empirical || subcommand == "normality") p["budget"] = o.budget;
  return p;
}

// --- subcommand bodies -----------------------------------------------------

std::string do_expand(const Options& o) {
  if (o.values.empty()) throw DomainError("expand needs the vector components after --");
  const auto nd = resolve_digits(o);
  const int sign = nd.negated ? -1 : 1;
  const JointExpansion e = ajsf(nd.negated ? negated(o.values) : o.values, nd.set);
  const auto rows = signed_rows(e, sign);
  const std::size_t h = hamming_weight(e);
  std::ostringstream os;
  if (o.as_json) {
    json j;
    j["l"] = nd.negated ? -nd.set.upper() : nd.set.lower();
    j["u"] = nd.negated ? -nd.set.lower() : nd.set.upper();
    j["dimension"] = e.dimension();
    j["rows"] = rows;
    j["weight"] = h;
    os << j.dump() << '\n';
    return os.str();
  }
  if (e.length() == 0) {
    os << "expansion: (empty)\n";
  } else {
    os << "expansion:\n";
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.size(); ++k) os << (k ? " " : "") << r[k];
      os << '\n';
    }
  }
  os << "weight = " << h << '\n';
  return os.str();
}

std::string do_weight(const Options& o) {
  if (o.values.empty()) throw DomainError("weight needs the vector components after --");
  const auto nd = resolve_digits(o);
  return std::to_string(ajsf_weight(nd.negated ? negated(o.values) : o.values, nd.set)) + "\n";
}

IntVector parse_row(const std::string& text) {
  IntVector row;
  std::string cleaned = text;
  for (auto& c : cleaned) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(cleaned);
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      row.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw DomainError("malformed digit '" + tok + "' in --row");
    }
  }
  return row;
}

std::string do_validate(const Options& o) {
  if (o.rows.empty()) throw DomainError("validate needs at least one --row");
  const auto nd = resolve_digits(o);
  if (nd.negated) throw DomainError("validate needs a digit set with l > -2^(w-1)");
  std::vector<IntVector> rows;
  for (const auto& r : o.rows) rows.push_back(parse_row(r));
  const JointExpansion e = JointExpansion::from_rows(nd.set, rows);
  const std::string why = ajsf_violation(e);
  std::ostringstream os;
  if (why.empty()) {
    os << "valid\n";
  } else {
    os << "invalid: " << why << '\n';
  }
  os << "value =";
  for (auto x : value(e)) os << ' ' << x;
  os << "\nweight = " << hamming_weight(e) << '\n';
  return os.str();
}

std::string do_minweight(const Options& o) {
  const auto nd = resolve_digits(o);
  std::ostringstream os;
  if (!o.values.empty()) {
    const IntVector n = nd.negated ? negated(o.values) : o.values;
    os << "min weight = " << min_weight_bruteforce(n, nd.set) << '\n';
    os << "ajsf weight = " << ajsf_weight(n, nd.set) << '\n';
    return os.str();
  }
  if (nd.negated) throw DomainError("range sweeps need a digit set with l > -2^(w-1)");
  if (o.nmax == 0) throw DomainError("minweight needs a vector after -- or --nmax");
  const int d = resolve_dimension(o);
  // An optimal path stays inside the box once it covers every digit.
  const std::int64_t bound = std::max({static_cast<std::int64_t>(o.nmax), -nd.set.lower(), nd.set.upper()});
  const MinWeightTable table(nd.set, static_cast<std::size_t>(d), bound);
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  IntVector n(static_cast<std::size_t>(d), 0);
  while (true) {
    const auto best = table.weight(n);
    const auto got = ajsf_weight(n, nd.set);
    ++checked;
    if (best != got) {
      ++mismatches;
      os << "mismatch n =";
      for (auto x : n) os << ' ' << x;
      os << ": ajsf " << got << ", minimum " << best << '\n';
    }
    std::size_t k = 0;
    while (k < n.size() && n[k] + 1 == static_cast<std::int64_t>(o.nmax)) n[k++] = 0;
    if (k == n.size()) break;
    ++n[k];
  }
  os << "checked = " << checked << '\n' << "mismatches = " << mismatches << '\n';
  return os.str();
}

std::string do_transducer(const Options& o) {
  const DigitSet ds = require_normalized(o);
  const int d = resolve_dimension(o);
  const Transducer tr = ajsf_transducer(ds, d);
  if (o.as_dot) return export_dot(tr);
  if (o.as_json) return to_json(tr) + "\n";
  std::ostringstream os;
  const long long bound = d == 1 ? 4LL * ds.width() - 2 : (1LL << (3 * d)) * ds.width();
  os << "digit set = " << ds.name() << '\n'
     << "dimension = " << d << '\n'
     << "states = " << tr.num_states() << '\n'
     << "state bound = " << bound << '\n'
     << "reset word = 0^" << tr.reset_length() << '\n'
     << "reset check = " << (reset_check(tr) ? "pass" : "fail") << '\n';
  return os.str();
}

std::string do_constants(const Options& o) {
  const DigitSet ds = require_normalized(o);
  const int d = resolve_dimension(o);
  const Transducer tr = ajsf_transducer(ds, d);
  const BivariatePolynomial p = char_poly(adjacency(tr));
  const SpectralResult r = dominant_constants(p, d);
  const SecondEigenvalue s = second_eigenvalue(p, d);
  std::ostringstream os;
  os << "e = " << to_string(r.e) << '\n'
     << "v = " << to_string(r.v) << '\n'
     << "mu0 = " << r.mu0 << '\n'
     << "beta0 = " << fmt(s.beta0) << '\n'
     << "delta = " << fmt(s.delta) << '\n';
  if (o.charpoly) {
    const auto shown = o.a_minus_x ? char_poly(adjacency(tr), CharPolySign::negated_identity) : p;
    os << (o.a_minus_x ? "det(A - xI) = " : "det(xI - A) = ") << shown.to_string() << '\n';
  }
  return os.str();
}

std::string do_moments(const Options& o) {
  const DigitSet ds = require_normalized(o);
  const int d = resolve_dimension(o);
  if (o.nmax == 0) throw DomainError("moments needs --nmax N >= 1");
  const StatReport r = o.empirical ? empirical_stats(ds, d, o.nmax, {o.budget, o.jobs}) : exact_moments(ds, d, o.nmax);
  std::ostringstream os;
  os << "N = " << r.n << '\n'
     << "d = " << r.dimension << '\n'
     << "count = " << r.count << '\n'
     << "sum = " << r.sum << '\n'
     << "sum_sq = " << r.sum_sq << '\n'
     << "mean = " << to_string(r.mean) << '\n'
     << "variance = " << to_string(r.variance) << '\n'
     << "mean_approx = " << fmt(r.mean.get_d()) << '\n'
     << "variance_approx = " << fmt(r.variance.get_d()) << '\n';
  return os.str();
}

std::string do_fluctuation(const Options& o) {
  const DigitSet ds = require_normalized(o);
  const int d = resolve_dimension(o);
  if (o.kmin < 0 || o.kmax < o.kmin || o.kmax > 62) throw DomainError("need 0 <= kmin <= kmax <= 62");
  if (o.per_octave < 1) throw DomainError("--per-octave must be >= 1");
  std::vector<std::uint64_t> samples;
  for (int k = o.kmin; k <= o.kmax; ++k) {
    for (int s = 0; s < (k == o.kmax ? 1 : o.per_octave); ++s) {
      const auto n = static_cast<std::uint64_t>(std::llround(std::exp2(k + static_cast<double>(s) / o.per_octave)));
      if (samples.empty() || samples.back() != n) samples.push_back(n);
    }
  }
  const SpectralResult sr = dominant_constants(char_poly(adjacency(ajsf_transducer(ds, d))), d);
  const auto rows = fluctuation_table(ds, d, samples, sr.e);
  std::ostringstream os;
  if (o.as_csv) {
    write_fluctuation_csv(os, rows);
    return os.str();
  }
  os << "e = " << to_string(sr.e) << '\n';
  for (const auto& r : rows) {
    os << "N = " << r.n << "  frac(log2 N) = " << fmt(r.frac_log2) << "  mean = " << fmt(r.mean)
       << "  residual = " << fmt(r.residual) << '\n';
  }
  return os.str();
}

std::string do_normality(const Options& o) {
  const DigitSet ds = require_normalized(o);
  const int d = resolve_dimension(o);
  const NormalityReport r = normality_check(ds, d, o.nmax, {o.budget, o.jobs});
  std::ostringstream os;
  os << "N = " << r.n << '\n'
     << "e = " << to_string(r.e) << '\n'
     << "v = " << to_string(r.v) << '\n'
     << "ks = " << fmt(r.ks) << '\n';
  return os.str();
}

std::string do_wnaf_roots(const Options& o) {
  const RootReport rep = find_roots(o.w);
  std::ostringstream os;
  if (o.as_csv) {
    os << "k,re_z,im_z,abs_z,abs_x,delta\n";
    for (const auto& r : rep.roots) {
      os << r.k << ',' << fmt(r.z.real()) << ',' << fmt(r.z.imag()) << ',' << fmt(std::abs(r.z)) << ','
         << fmt(std::abs(r.eigenvalue)) << ',' << fmt(rep.delta) << '\n';
    }
    return os.str();
  }
  os << "w = " << rep.w << (rep.fallback ? " (companion-matrix solver)" : " (fixed-point iteration)") << '\n';
  for (const auto& r : rep.roots) {
    os << "k = " << r.k << "  z = " << fmt(r.z.real()) << (r.z.imag() < 0 ? " - " : " + ") << fmt(std::fabs(r.z.imag()))
       << "i  |z| = " << fmt(std::abs(r.z)) << "  |x| = " << fmt(std::abs(r.eigenvalue))
       << "  residual = " << fmt(r.residual) << (r.in_sector ? "" : "  (outside sector bounds)") << '\n';
  }
  os << "beta0 = " << fmt(rep.beta0) << '\n' << "delta = " << fmt(rep.delta) << '\n';
  return os.str();
}

void write_artifacts(const Options& o, const std::string& subcommand, const std::string& text, int argc,
                     const char* const* argv) {
  {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file '" + o.out_path + "'");
    f << text;
  }
  json m;
  m["tool"] = "ajsf";
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["parameters"] = parameters(o, subcommand);
  m["seed"] = nullptr;
  m["outputs"] = json::array({o.out_path});
  json args = json::array();
  for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
  m["argv"] = args;
  std::ofstream mf(o.out_path + ".manifest.json", std::ios::binary);
  if (!mf) throw DomainError("cannot open manifest file");
  mf << m.dump(2) << '\n';
}

void report_error(std::ostream& err, const char* kind, const std::string& message) {
  json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << '\n';
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Asymmetric joint sparse forms: expansions, weight transducers and their statistics", "ajsf"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  struct Entry {
    CLI::App* app;
    std::function<std::string(const Options&)> body;
  };
  std::vector<Entry> entries;
  auto sub = [&](const char* name, const char* help, std::function<std::string(const Options&)> body) {
    CLI::App* s = app.add_subcommand(name, help);
    add_output(s, o);
    entries.push_back({s, std::move(body)});
    return s;
  };
  auto vector_args = [&](CLI::App* s) { s->add_option("values", o.values, "vector components (after --)"); };

  auto* expand = sub("expand", "AJSF of a vector", do_expand);
  add_digit_set(expand, o);
  expand->add_flag("--json", o.as_json, "print JSON");
  vector_args(expand);

  auto* weight = sub("weight", "Hamming weight of the AJSF of a vector", do_weight);
  add_digit_set(weight, o);
  vector_args(weight);

  auto* validate = sub("validate", "check the AJSF syntax of an expansion", do_validate);
  add_digit_set(validate, o);
  validate->add_option("--row", o.rows, "one row, most significant digit first (repeat per coordinate)")->required();

  auto* minweight = sub("minweight", "compare AJSF weights with the brute-force minimum", do_minweight);
  add_digit_set(minweight, o);
  minweight->add_option("--d", o.d, "dimension for --nmax sweeps");
  minweight->add_option("--nmax", o.nmax, "sweep every vector in [0, nmax)^d");
  vector_args(minweight);

  auto* transducer = sub("transducer", "build the weight transducer", do_transducer);
  add_digit_set(transducer, o);
  transducer->add_option("--d", o.d, "dimension");
  transducer->add_flag("--dot", o.as_dot, "print Graphviz DOT");
  transducer->add_flag("--json", o.as_json, "print JSON");

  auto* constants = sub("constants", "exact mean/variance constants and spectral gap", do_constants);
  add_digit_set(constants, o);
  constants->add_option("--d", o.d, "dimension");
  constants->add_flag("--charpoly", o.charpoly, "also print the characteristic polynomial p(x,z)");
  constants->add_flag("--a-minus-x", o.a_minus_x, "print det(A - xI) instead of det(xI - A)");

  auto* moments = sub("moments", "exact mean and variance over [0, N)^d", do_moments);
  add_digit_set(moments, o);
  moments->add_option("--d", o.d, "dimension");
  moments->add_option("--nmax", o.nmax, "N")->required();
  moments->add_flag("--empirical", o.empirical, "enumerate every vector instead of using the recursion");
  moments->add_option("--budget", o.budget, "maximum number of enumerated vectors");
  moments->add_option("--jobs", o.jobs, "worker threads for enumeration (0 = all cores)");

  auto* fluct = sub("fluctuation", "residual mean(N) - e log2 N over N = 2^k", do_fluctuation);
  add_digit_set(fluct, o);
  fluct->add_option("--d", o.d, "dimension");
  fluct->add_option("--kmin", o.kmin, "smallest exponent");
  fluct->add_option("--kmax", o.kmax, "largest exponent");
  fluct->add_option("--per-octave", o.per_octave, "samples per doubling of N");
  fluct->add_flag("--csv", o.as_csv, "print CSV");

  auto* normal = sub("normality", "KS distance of standardized weights to the normal law", do_normality);
  add_digit_set(normal, o);
  normal->add_option("--d", o.d, "dimension");
  normal->add_option("--nmax", o.nmax, "N")->required();
  normal->add_option("--budget", o.budget, "maximum number of enumerated vectors");
  normal->add_option("--jobs", o.jobs, "worker threads (0 = all cores)");

  auto* roots = sub("wnaf-roots", "roots of z^w + z - 2 by sector", do_wnaf_roots);
  roots->add_option("--w", o.w, "window width")->required();
  roots->add_flag("--csv", o.as_csv, "print CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return 2;
  }

  for (const auto& entry : entries) {
    if (!entry.app->parsed()) continue;
    try {
      const std::string text = entry.body(o);
      out << text;
      if (!o.out_path.empty()) write_artifacts(o, entry.app->get_name(), text, argc, argv);
      return 0;
    } catch (const BudgetExceeded& e) {
      report_error(err, "budget", e.what());
    } catch (const NumericalError& e) {
      report_error(err, "numerical", e.what());
    } catch (const DomainError& e) {
      report_error(err, "domain", e.what());
    }
    return 1;
  }
  report_error(err, "usage", "no subcommand given");
  return 2;
}

}  // namespace ajsf::cli
