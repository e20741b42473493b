#include "ajsf/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "ajsf/error.hpp"

namespace ajsf {

MinWeightTable::MinWeightTable(const DigitSet& ds, std::size_t dimension, std::int64_t bound,
                               std::size_t budget)
    : set_(ds), dim_(dimension), bound_(std::max({bound, -ds.lower(), ds.upper()})) {
  if (dim_ == 0) throw DomainError("dimension must be >= 1");
  side_ = 2 * bound_ + 1;
  std::size_t cells = 1;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (cells > budget / static_cast<std::size_t>(side_)) {
      throw BudgetExceeded("min-weight table for bound " + std::to_string(bound_) +
                           " exceeds the memo budget");
    }
    cells *= static_cast<std::size_t>(side_);
  }
  dist_.assign(cells, kUnreachable);

  const std::int64_t l = ds.lower();
  const std::int64_t u = ds.upper();
  IntVector zero(dim_, 0);
  std::deque<std::size_t> queue;
  dist_[index(zero)] = 0;
  queue.push_back(index(zero));

  IntVector m(dim_), eps(dim_), pred(dim_);
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    std::size_t rest = cur;
    for (std::size_t i = 0; i < dim_; ++i) {
      m[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(side_)) - bound_;
      rest /= static_cast<std::size_t>(side_);
    }
    const std::uint32_t base = dist_[cur];
    std::fill(eps.begin(), eps.end(), l);
    while (true) {
      bool inside = true;
      bool nonzero = false;
      for (std::size_t i = 0; i < dim_; ++i) {
        pred[i] = 2 * m[i] + eps[i];
        inside &= pred[i] >= -bound_ && pred[i] <= bound_;
        nonzero |= eps[i] != 0;
      }
      if (inside) {
        const std::size_t p = index(pred);
        const std::uint32_t cand = base + (nonzero ? 1U : 0U);
        if (cand < dist_[p]) {
          dist_[p] = cand;
          if (nonzero) {
            queue.push_back(p);
          } else {
            queue.push_front(p);
          }
        }
      }
      std::size_t k = 0;
      while (k < dim_ && eps[k] == u) eps[k++] = l;
      if (k == dim_) break;
      ++eps[k];
    }
  }
}

std::size_t MinWeightTable::index(const IntVector& n) const {
  std::size_t idx = 0;
  for (std::size_t i = dim_; i-- > 0;) {
    idx = idx * static_cast<std::size_t>(side_) + static_cast<std::size_t>(n[i] + bound_);
  }
  return idx;
}

std::uint32_t MinWeightTable::weight(const IntVector& n) const {
  if (n.size() != dim_) throw DomainError("vector dimension does not match the table");
  for (auto x : n) {
    if (x < -bound_ || x > bound_) throw DomainError("vector outside the table's box");
  }
  return dist_[index(n)];
}

std::size_t min_weight_bruteforce(const IntVector& n, const DigitSet& ds, std::size_t budget) {
  if (ds.lower() == 0) {
    for (auto x : n) {
      if (x < 0) throw DomainError("negative component needs a digit set with l < 0");
    }
  }
  std::int64_t bound = 0;
  for (auto x : n) bound = std::max(bound, x < 0 ? -x : x);
  MinWeightTable table(ds, n.size(), bound, budget);
  const auto w = table.weight(n);
  if (w == MinWeightTable::kUnreachable) throw DomainError("vector has no representation");
  return w;
}

namespace {

struct CandidateSearch {
  const DigitSet& ds;
  std::size_t dim;
  std::size_t max_len;
  std::vector<IntVector> columns;  // eps_0 .. eps_{j-1}
  std::set<std::vector<IntVector>> found;

  bool in_range(const IntVector& n, std::size_t remaining) const {
    if (remaining >= 62) return true;
    const std::int64_t span = (std::int64_t{1} << remaining) - 1;
    for (auto x : n) {
      if (x < ds.lower() * span || x > ds.upper() * span) return false;
    }
    return true;
  }

  // Conditions (3a)-(3c) between a nonzero column `prev` and the nonzero
  // column `next` placed w-1 positions later.
  bool compatible(const IntVector& prev, const IntVector& next) const {
    const std::int64_t half = ds.half();
    const std::int64_t u = ds.upper();
    bool witness = false;
    for (std::size_t i = 0; i < dim; ++i) {
      if ((next[i] & 1) != 0 && ds.is_unique(prev[i])) witness = true;
      if (ds.is_nonunique(prev[i]) && floor_mod(next[i] - (u + 1), half) == 0) return false;
      if (ds.is_nonunique(prev[i]) && ds.is_upper(prev[i]) && floor_mod(next[i] - u, half) != 0) {
        return false;
      }
    }
    return witness;
  }

  // `last_nonzero` is the index of the most recent nonzero column, if any.
  void dfs(const IntVector& n, std::ptrdiff_t last_nonzero) {
    const std::size_t j = columns.size();
    if (std::all_of(n.begin(), n.end(), [](std::int64_t x) { return x == 0; })) {
      std::vector<IntVector> canon = columns;
      while (!canon.empty() &&
             std::all_of(canon.back().begin(), canon.back().end(), [](std::int64_t x) { return x == 0; })) {
        canon.pop_back();
      }
      found.insert(std::move(canon));
      return;
    }
    if (j >= max_len || !in_range(n, max_len - j)) return;

    const std::size_t w = static_cast<std::size_t>(ds.width());
    const bool in_zero_window =
        last_nonzero >= 0 && j - static_cast<std::size_t>(last_nonzero) <= w - 2;
    const bool all_even = std::all_of(n.begin(), n.end(), [](std::int64_t x) { return (x & 1) == 0; });
    if (all_even) {
      IntVector half_n(dim);
      for (std::size_t i = 0; i < dim; ++i) half_n[i] = n[i] / 2;
      columns.emplace_back(dim, 0);
      dfs(half_n, last_nonzero);
      columns.pop_back();
      return;
    }
    // A column with an odd digit: forbidden inside the zero window (2).
    if (in_zero_window) return;

    // The w-2 zero columns that must follow force eps = n (mod 2^{w-1}).
    const std::int64_t mod = ds.half();
    std::vector<std::vector<std::int64_t>> choices(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const std::int64_t r = floor_mod(n[i], mod);
      for (std::int64_t a = ds.lower(); a <= ds.upper(); ++a) {
        if (floor_mod(a, mod) == r) choices[i].push_back(a);
      }
      if (choices[i].empty()) return;
    }
    const bool check3 = last_nonzero >= 0 && j - static_cast<std::size_t>(last_nonzero) == w - 1;
    std::vector<std::size_t> pick(dim, 0);
    while (true) {
      IntVector eps(dim);
      for (std::size_t i = 0; i < dim; ++i) eps[i] = choices[i][pick[i]];
      if (!check3 || compatible(columns[static_cast<std::size_t>(last_nonzero)], eps)) {
        IntVector next(dim);
        for (std::size_t i = 0; i < dim; ++i) next[i] = (n[i] - eps[i]) / 2;
        columns.push_back(eps);
        dfs(next, static_cast<std::ptrdiff_t>(j));
        columns.pop_back();
      }
      std::size_t k = 0;
      while (k < dim && pick[k] + 1 == choices[k].size()) pick[k++] = 0;
      if (k == dim) break;
      ++pick[k];
    }
  }
};

}  // namespace

std::vector<JointExpansion> enumerate_ajsf_candidates(const IntVector& n, const DigitSet& ds,
                                                      std::size_t max_len) {
  if (n.empty()) throw DomainError("input vector must have dimension >= 1");
  CandidateSearch search{ds, n.size(), max_len, {}, {}};
  search.dfs(n, -1);
  std::vector<JointExpansion> out;
  for (const auto& cols : search.found) {
    JointExpansion e(n.size(), ds);
    for (const auto& c : cols) e.push_column(c);
    if (validate_ajsf(e)) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace ajsf
