#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "ajsf/automata.hpp"
#include "ajsf/digit_set.hpp"
#include "ajsf/numeric.hpp"

namespace ajsf {

/// Weight-generating jet of a set of paths: (number of paths, sum of their
/// weights, sum of squared weights). Concatenating paths adds weights, so
/// the product is (a0 b0, a0 b1 + a1 b0, a0 b2 + 2 a1 b1 + a2 b0).
struct Jet {
  BigInt count = 0;
  BigInt sum = 0;
  BigInt sum_sq = 0;

  static Jet path(std::int64_t weight) { return {1, weight, weight * weight}; }

  Jet& operator+=(const Jet& o) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    return {a.count * b.count, a.count * b.sum + a.sum * b.count,
            a.count * b.sum_sq + 2 * a.sum * b.sum + a.sum_sq * b.count};
  }
  bool operator==(const Jet& o) const { return count == o.count && sum == o.sum && sum_sq == o.sum_sq; }
  bool is_zero() const { return count == 0 && sum == 0 && sum_sq == 0; }
};

/// Dense rows x cols matrix of jets.
class JetMatrix {
 public:
  JetMatrix(std::size_t rows = 0, std::size_t cols = 0) : rows_(rows), cols_(cols), e_(rows * cols) {}
  static JetMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Jet& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Jet& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  JetMatrix& operator+=(const JetMatrix& o);
  friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);
  bool operator==(const JetMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Jet> e_;
};

/// The summatory recursion of a weight transducer, evaluated on jets.
///
/// For a coordinate set C (bitmask), G_C(N) sums M(m) over the vectors with
/// m_i = N for i in C and 0 <= m_i < N otherwise; F(N) = G_empty(N). All
/// functions act on a right-hand side block X, i.e. return G_C(N) X.
class MomentEngine {
 public:
  explicit MomentEngine(const Transducer& tr);

  int dimension() const { return dim_; }
  std::size_t num_states() const { return n_; }
  /// Index of the initial state (the last one for constructed transducers).
  std::size_t initial() const { return initial_; }

  /// B_{C,D} X. Throws DomainError if C and D overlap.
  JetMatrix apply_aggregate(std::uint32_t zeros, std::uint32_t ones, const JetMatrix& x) const;
  /// A X.
  JetMatrix apply_adjacency(const JetMatrix& x) const { return apply_aggregate(0, 0, x); }

  /// M_0^{k} v for the reset length k: the jet of the padding path from each
  /// state into the initial state (column vector).
  JetMatrix reset_vector() const;

  /// G_C(N) X for every C; index = bitmask. Requires N >= 1.
  std::vector<JetMatrix> g_all(std::uint64_t n, const JetMatrix& x) const;
  /// F(N) X; F(0) = 0.
  JetMatrix f(std::uint64_t n, const JetMatrix& x) const;
  /// H(N) X = sum over nonempty D of B_{D,empty} G_D(N) X, with H(0) = G_empty(1).
  JetMatrix h(std::uint64_t n, const JetMatrix& x) const;

  /// (count, sum of weights, sum of squared weights) over [0, N)^d.
  Jet summatory(std::uint64_t n) const;

  /// Count-level (t = 0) version of the transition structure, for numerics.
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::uint32_t input;
    int output;
  };
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  void step(std::vector<JetMatrix>& g, int bit) const;

  int dim_;
  std::size_t n_;
  std::size_t initial_;
  int reset_length_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> zero_target_;
  std::vector<int> zero_output_;
};

struct StatReport {
  std::uint64_t n = 0;
  int dimension = 0;
  /// N^d.
  BigInt count = 0;
  BigInt sum = 0;
  BigInt sum_sq = 0;
  Rational mean = 0;
  Rational variance = 0;
  /// mean - e log2 N when e is supplied.
  std::optional<double> residual;
  /// Kolmogorov-Smirnov distance of the standardized weights.
  std::optional<double> ks;
};

/// Assembles mean = sum/count and variance = sum_sq/count - mean^2.
StatReport make_report(std::uint64_t n, int dimension, const Jet& totals);

/// Exact mean and variance of the weight over [0, N)^d from the recursion.
/// Requires N >= 1.
StatReport exact_moments(const DigitSet& ds, int dimension, std::uint64_t n);
StatReport exact_moments(const MomentEngine& engine, std::uint64_t n);

struct EnumerationOptions {
  std::uint64_t budget = std::uint64_t{1} << 24;
  /// 0 picks the hardware concurrency.
  unsigned jobs = 0;
};

/// Histogram of the weight over [0, N)^d by running the transducer on every
/// vector. Throws BudgetExceeded if N^d exceeds the budget.
std::vector<std::uint64_t> weight_histogram(const Transducer& tr, std::uint64_t n,
                                            const EnumerationOptions& opt = {});

/// Mean and variance by direct enumeration; agrees exactly with exact_moments.
StatReport empirical_stats(const DigitSet& ds, int dimension, std::uint64_t n, const EnumerationOptions& opt = {});

struct FluctuationRow {
  std::uint64_t n = 0;
  /// Fractional part of log2 N.
  double frac_log2 = 0.0;
  double mean = 0.0;
  /// mean(N) - e log2 N.
  double residual = 0.0;
};

/// Residual table from the exact recursion, one row per sample N >= 1.
std::vector<FluctuationRow> fluctuation_table(const DigitSet& ds, int dimension, const std::vector<std::uint64_t>& samples,
                                              const Rational& e);
/// CSV with header "N,frac_log2N,mean,residual"; 12 significant digits.
void write_fluctuation_csv(std::ostream& os, const std::vector<FluctuationRow>& rows);

struct PsiOptions {
  int terms = 40;
  int max_power_iterations = 100000;
  double power_tolerance = 1e-15;
};

/// Periodic factor Psi(x, 0) of the summatory function, from the truncated
/// series over the binary digits of 2^{frac(x)}, using the rank-one Perron
/// projector of A at z = 1 in place of every power of the scaled inverse
/// dominant eigenvalue (including the zeroth). Throws NumericalError if the
/// power iteration does not converge.
double psi_at(const DigitSet& ds, int dimension, double x, const PsiOptions& opt = {});

/// Same series for an explicit digit sequence x_0 = 1, x_1, x_2, ... of
/// y = sum x_q 2^{-q} in [1, 2), truncated to the given digits; scaled by
/// y^{-d}.
double psi_from_bits(const DigitSet& ds, int dimension, const std::vector<int>& bits, const PsiOptions& opt = {});

/// Upper bound on the change of psi_at when the number of terms grows beyond
/// `terms`: d 2^{d+1} max(beta0 / 2^d, 1/2)^terms.
double psi_tail_bound(int dimension, double beta0, int terms);

struct NormalityReport {
  std::uint64_t n = 0;
  Rational e;
  Rational v;
  double ks = 0.0;
};

/// Sup distance between the empirical CDF of (h - e log2 N)/sqrt(v log2 N)
/// over [0, N)^d and the standard normal CDF. Requires N >= 2.
NormalityReport normality_check(const DigitSet& ds, int dimension, std::uint64_t n, const EnumerationOptions& opt = {});

/// KS distance of a weight histogram against N(mean, sd^2); the supremum is
/// taken on both sides of every atom.
double ks_distance(const std::vector<std::uint64_t>& histogram, double center, double scale);

}  // namespace ajsf
