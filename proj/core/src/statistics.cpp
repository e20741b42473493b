#include "ajsf/statistics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <thread>

#include "ajsf/error.hpp"
#include "ajsf/spectral.hpp"

namespace ajsf {

JetMatrix JetMatrix::identity(std::size_t n) {
  JetMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = Jet::path(0);
  return m;
}

JetMatrix& JetMatrix::operator+=(const JetMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw DomainError("jet matrix shape mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("jet matrix shape mismatch");
  JetMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Jet& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
      }
    }
  }
  return out;
}

namespace {

// target += z^output * source, for jets: output 1 shifts every weight by one.
void accumulate(Jet& target, const Jet& source, int output) {
  if (output == 0) {
    target += source;
    return;
  }
  target.sum_sq += source.sum_sq;
  target.sum_sq += 2 * source.sum;
  target.sum_sq += source.count;
  target.sum += source.sum;
  target.sum += source.count;
  target.count += source.count;
}

}  // namespace

MomentEngine::MomentEngine(const Transducer& tr)
    : dim_(tr.dimension()), n_(tr.num_states()), initial_(tr.initial()), reset_length_(tr.reset_length()) {
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::uint32_t e = 0; e < tr.num_inputs(); ++e) {
      const Transition& t = tr.transition(j, e);
      edges_.push_back({j, t.target, e, t.output});
    }
    zero_target_.push_back(tr.transition(j, 0).target);
    zero_output_.push_back(tr.transition(j, 0).output);
  }
}

JetMatrix MomentEngine::apply_aggregate(std::uint32_t zeros, std::uint32_t ones, const JetMatrix& x) const {
  if ((zeros & ones) != 0) throw DomainError("coordinate sets C and D must be disjoint");
  if (x.rows() != n_) throw DomainError("right-hand side has wrong row count");
  JetMatrix out(n_, x.cols());
  for (const Edge& e : edges_) {
    if ((e.input & zeros) != 0 || (e.input & ones) != ones) continue;
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const Jet& src = x(e.to, c);
      if (!src.is_zero()) accumulate(out(e.from, c), src, e.output);
    }
  }
  return out;
}

JetMatrix MomentEngine::reset_vector() const {
  JetMatrix u(n_, 1);
  for (std::size_t j = 0; j < n_; ++j) {
    std::size_t cur = j;
    std::int64_t w = 0;
    for (int i = 0; i < reset_length_; ++i) {
      w += zero_output_[cur];
      cur = zero_target_[cur];
    }
    if (cur == initial_) u(j, 0) = Jet::path(w);
  }
  return u;
}

void MomentEngine::step(std::vector<JetMatrix>& g, int bit) const {
  const std::uint32_t full = (1U << dim_) - 1;
  std::vector<JetMatrix> next;
  next.reserve(g.size());
  for (std::uint32_t c = 0; c <= full; ++c) {
    if (bit == 0) {
      next.push_back(apply_aggregate(c, 0, g[c]));
      continue;
    }
    const std::uint32_t rest = full & ~c;
    JetMatrix acc(n_, g[c].cols());
    // Every subset D of the complement, including the empty set.
    for (std::uint32_t d = rest;; d = (d - 1) & rest) {
      acc += apply_aggregate(d, c, g[c | d]);
      if (d == 0) break;
    }
    next.push_back(std::move(acc));
  }
  g = std::move(next);
}

std::vector<JetMatrix> MomentEngine::g_all(std::uint64_t n, const JetMatrix& x) const {
  if (n == 0) throw DomainError("G_C(N) needs N >= 1");
  const std::uint32_t full = (1U << dim_) - 1;
  std::vector<JetMatrix> g;
  for (std::uint32_t c = 0; c <= full; ++c) g.push_back(apply_aggregate(full & ~c, c, x));
  for (int b = static_cast<int>(std::bit_width(n)) - 2; b >= 0; --b) step(g, static_cast<int>((n >> b) & 1));
  return g;
}

JetMatrix MomentEngine::f(std::uint64_t n, const JetMatrix& x) const {
  if (n == 0) return JetMatrix(n_, x.cols());
  return g_all(n, x).front();
}

JetMatrix MomentEngine::h(std::uint64_t n, const JetMatrix& x) const {
  if (n == 0) return g_all(1, x).front();
  const auto g = g_all(n, x);
  JetMatrix acc(n_, x.cols());
  for (std::uint32_t d = 1; d < g.size(); ++d) acc += apply_aggregate(d, 0, g[d]);
  return acc;
}

Jet MomentEngine::summatory(std::uint64_t n) const {
  if (n == 0) return {};
  return f(n, reset_vector())(initial_, 0);
}

StatReport make_report(std::uint64_t n, int dimension, const Jet& totals) {
  StatReport r;
  r.n = n;
  r.dimension = dimension;
  r.count = totals.count;
  r.sum = totals.sum;
  r.sum_sq = totals.sum_sq;
  if (totals.count == 0) throw DomainError("empty input range");
  r.mean = Rational(totals.sum, totals.count);
  r.mean.canonicalize();
  Rational second(totals.sum_sq, totals.count);
  second.canonicalize();
  r.variance = second - r.mean * r.mean;
  return r;
}

StatReport exact_moments(const MomentEngine& engine, std::uint64_t n) {
  if (n == 0) throw DomainError("N must be >= 1");
  return make_report(n, engine.dimension(), engine.summatory(n));
}

StatReport exact_moments(const DigitSet& ds, int dimension, std::uint64_t n) {
  return exact_moments(MomentEngine(ajsf_transducer(ds, dimension)), n);
}

namespace {

std::uint64_t checked_power(std::uint64_t n, int d, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) {
    if (n != 0 && total > budget / n) {
      throw BudgetExceeded("N^d exceeds the enumeration budget of " + std::to_string(budget));
    }
    total *= n;
  }
  if (total > budget) throw BudgetExceeded("N^d exceeds the enumeration budget of " + std::to_string(budget));
  return total;
}

unsigned effective_jobs(unsigned jobs, std::uint64_t work) {
  unsigned j = jobs == 0 ? std::max(1U, std::thread::hardware_concurrency()) : jobs;
  if (work < 4096) j = 1;
  return j;
}

}  // namespace

std::vector<std::uint64_t> weight_histogram(const Transducer& tr, std::uint64_t n, const EnumerationOptions& opt) {
  const int d = tr.dimension();
  const std::uint64_t total = checked_power(n, d, opt.budget);
  const unsigned jobs = effective_jobs(opt.jobs, total);
  std::vector<std::vector<std::uint64_t>> parts(jobs);

  auto worker = [&](unsigned id) {
    const std::uint64_t lo = total * id / jobs;
    const std::uint64_t hi = total * (id + 1) / jobs;
    auto& hist = parts[id];
    std::vector<std::uint64_t> m(static_cast<std::size_t>(d));
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      std::uint64_t rest = idx;
      std::uint64_t all = 0;
      for (int j = 0; j < d; ++j) {
        m[static_cast<std::size_t>(j)] = rest % n;
        rest /= n;
        all |= m[static_cast<std::size_t>(j)];
      }
      const int len = static_cast<int>(std::bit_width(all));
      std::size_t state = tr.initial();
      std::size_t weight = 0;
      for (int i = 0; i < len + tr.reset_length(); ++i) {
        std::uint32_t eps = 0;
        if (i < len) {
          for (int j = 0; j < d; ++j) eps |= static_cast<std::uint32_t>((m[static_cast<std::size_t>(j)] >> i) & 1) << j;
        }
        const Transition& t = tr.transition(state, eps);
        weight += static_cast<std::size_t>(t.output);
        state = t.target;
      }
      if (weight >= hist.size()) hist.resize(weight + 1, 0);
      ++hist[weight];
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint64_t> hist;
  for (const auto& p : parts) {
    if (p.size() > hist.size()) hist.resize(p.size(), 0);
    for (std::size_t k = 0; k < p.size(); ++k) hist[k] += p[k];
  }
  return hist;
}

StatReport empirical_stats(const DigitSet& ds, int dimension, std::uint64_t n, const EnumerationOptions& opt) {
  if (n == 0) throw DomainError("N must be >= 1");
  const auto hist = weight_histogram(ajsf_transducer(ds, dimension), n, opt);
  Jet totals;
  for (std::size_t h = 0; h < hist.size(); ++h) {
    const BigInt c(static_cast<unsigned long>(hist[h]));
    const BigInt hb(static_cast<unsigned long>(h));
    totals.count += c;
    totals.sum += c * hb;
    totals.sum_sq += c * hb * hb;
  }
  return make_report(n, dimension, totals);
}

std::vector<FluctuationRow> fluctuation_table(const DigitSet& ds, int dimension, const std::vector<std::uint64_t>& samples,
                                              const Rational& e) {
  const MomentEngine engine(ajsf_transducer(ds, dimension));
  const double slope = e.get_d();
  std::vector<FluctuationRow> rows;
  for (auto n : samples) {
    const StatReport r = exact_moments(engine, n);
    const double lg = std::log2(static_cast<double>(n));
    FluctuationRow row;
    row.n = n;
    row.frac_log2 = lg - std::floor(lg);
    row.mean = r.mean.get_d();
    row.residual = row.mean - slope * lg;
    rows.push_back(row);
  }
  return rows;
}

void write_fluctuation_csv(std::ostream& os, const std::vector<FluctuationRow>& rows) {
  const auto old = os.precision(12);
  os << "N,frac_log2N,mean,residual\n";
  for (const auto& r : rows) os << r.n << ',' << r.frac_log2 << ',' << r.mean << ',' << r.residual << '\n';
  os.precision(old);
}

namespace {

// Count-level (z = 1) evaluation of the recursion in floating point, with
// every G_C rescaled by 2^{-d} per doubling so that the values stay bounded.
class PsiSeries {
 public:
  PsiSeries(const Transducer& tr, const PsiOptions& opt) : engine_(tr), opt_(opt) {
    const std::size_t n = engine_.num_states();
    const double scale = std::ldexp(1.0, engine_.dimension());
    left_.assign(n, 1.0 / static_cast<double>(n));
    bool converged = false;
    for (int it = 0; it < opt_.max_power_iterations && !converged; ++it) {
      std::vector<double> next(n, 0.0);
      for (const auto& e : engine_.edges()) next[e.to] += left_[e.from];
      double total = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        next[k] = (next[k] + scale * left_[k]) / (2.0 * scale);
        total += next[k];
      }
      double change = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        next[k] /= total;
        change = std::max(change, std::fabs(next[k] - left_[k]));
      }
      left_ = std::move(next);
      converged = change < opt_.power_tolerance;
    }
    if (!converged) throw NumericalError("Perron vector power iteration did not converge");
  }

  // sum_q x_q 2^{-dq} l^T H(val_q) u / l^T r over the first `terms` digits.
  double series(const std::vector<int>& bits, int terms) const {
    const int d = engine_.dimension();
    const std::uint32_t full = (1U << d) - 1;
    const std::size_t n = engine_.num_states();
    const std::vector<double> ones(n, 1.0);
    std::vector<std::vector<double>> g;
    for (std::uint32_t c = 0; c <= full; ++c) g.push_back(apply(full & ~c, c, ones));

    const int count = std::min(terms, static_cast<int>(bits.size()));
    double total = bits.empty() || bits[0] == 0 ? 0.0 : dot(g[0]);
    const double shrink = std::ldexp(1.0, -d);
    for (int q = 1; q < count; ++q) {
      if (bits[static_cast<std::size_t>(q)] != 0) {
        double term = 0.0;
        for (std::uint32_t c = 1; c <= full; ++c) term += dot(apply(c, 0, g[c]));
        total += term * shrink;
      }
      if (q + 1 < count) advance(g, bits[static_cast<std::size_t>(q)]);
    }
    double lr = 0.0;
    for (double x : left_) lr += x;
    return total / lr;
  }

 private:
  std::vector<double> apply(std::uint32_t zeros, std::uint32_t ones, const std::vector<double>& x) const {
    std::vector<double> out(x.size(), 0.0);
    for (const auto& e : engine_.edges()) {
      if ((e.input & zeros) == 0 && (e.input & ones) == ones) out[e.from] += x[e.to];
    }
    return out;
  }

  double dot(const std::vector<double>& x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += left_[k] * x[k];
    return s;
  }

  // g_C(val) -> g_C(2 val + bit) * 2^{-d}.
  void advance(std::vector<std::vector<double>>& g, int bit) const {
    const int d = engine_.dimension();
    const std::uint32_t full = (1U << d) - 1;
    std::vector<std::vector<double>> next;
    for (std::uint32_t c = 0; c <= full; ++c) {
      std::vector<double> acc(engine_.num_states(), 0.0);
      if (bit == 0) {
        acc = apply(c, 0, g[c]);
      } else {
        const std::uint32_t rest = full & ~c;
        for (std::uint32_t dset = rest;; dset = (dset - 1) & rest) {
          const auto part = apply(dset, c, g[c | dset]);
          for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += part[k];
          if (dset == 0) break;
        }
      }
      for (auto& v : acc) v = std::ldexp(v, -d);
      next.push_back(std::move(acc));
    }
    g = std::move(next);
  }

  MomentEngine engine_;
  PsiOptions opt_;
  std::vector<double> left_;
};

}  // namespace

double psi_from_bits(const DigitSet& ds, int dimension, const std::vector<int>& bits, const PsiOptions& opt) {
  if (bits.empty() || bits[0] != 1) throw DomainError("digit sequence must start with x_0 = 1");
  if (opt.terms < 1) throw DomainError("truncation must be >= 1");
  double y = 0.0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] != 0 && bits[q] != 1) throw DomainError("digits must be 0 or 1");
    y += std::ldexp(static_cast<double>(bits[q]), -static_cast<int>(q));
  }
  const PsiSeries series(ajsf_transducer(ds, dimension), opt);
  return series.series(bits, opt.terms) * std::pow(y, -dimension);
}

double psi_at(const DigitSet& ds, int dimension, double x, const PsiOptions& opt) {
  if (!std::isfinite(x)) throw DomainError("x must be finite");
  if (opt.terms < 1) throw DomainError("truncation must be >= 1");
  const double frac = x - std::floor(x);
  const double y = std::exp2(frac);
  std::vector<int> bits{1};
  double rest = y - 1.0;
  for (int q = 1; q < opt.terms; ++q) {
    rest *= 2.0;
    const int b = rest >= 1.0 ? 1 : 0;
    rest -= b;
    bits.push_back(b);
  }
  const PsiSeries series(ajsf_transducer(ds, dimension), opt);
  return series.series(bits, opt.terms) * std::pow(y, -dimension);
}

double psi_tail_bound(int dimension, double beta0, int terms) {
  const double ratio = std::max(beta0 / std::ldexp(1.0, dimension), 0.5);
  return dimension * std::ldexp(1.0, dimension + 1) * std::pow(ratio, terms);
}

double ks_distance(const std::vector<std::uint64_t>& histogram, double center, double scale) {
  if (!(scale > 0.0)) throw DomainError("scale must be positive");
  double total = 0.0;
  for (auto c : histogram) total += static_cast<double>(c);
  if (total == 0.0) throw DomainError("empty histogram");
  double below = 0.0;
  double ks = 0.0;
  for (std::size_t h = 0; h < histogram.size(); ++h) {
    if (histogram[h] == 0) continue;
    const double z = (static_cast<double>(h) - center) / scale;
    const double phi = 0.5 * std::erfc(-z / std::sqrt(2.0));
    const double above = below + static_cast<double>(histogram[h]);
    ks = std::max({ks, std::fabs(below / total - phi), std::fabs(above / total - phi)});
    below = above;
  }
  return ks;
}

NormalityReport normality_check(const DigitSet& ds, int dimension, std::uint64_t n, const EnumerationOptions& opt) {
  if (n < 2) throw DomainError("normality check needs N >= 2");
  const Transducer tr = ajsf_transducer(ds, dimension);
  const SpectralResult sr = dominant_constants(char_poly(adjacency(tr)), dimension);
  if (sr.v <= 0) throw NumericalError("variance constant is not positive");
  const auto hist = weight_histogram(tr, n, opt);
  const double lg = std::log2(static_cast<double>(n));
  NormalityReport r;
  r.n = n;
  r.e = sr.e;
  r.v = sr.v;
  r.ks = ks_distance(hist, sr.e.get_d() * lg, std::sqrt(sr.v.get_d() * lg));
  return r;
}

}  // namespace ajsf
