#pragma once

#include <complex>
#include <vector>

namespace ajsf {

/// Root z_k of z^w + z - 2 in sector k, with the matching eigenvalue 2/z_k of
/// the w-NAF adjacency matrix at z = 1.
struct SectorRoot {
  int k = 0;
  std::complex<double> z;
  std::complex<double> eigenvalue;
  int iterations = 0;
  double residual = 0.0;
  /// |z| <= 1 + 3/w and |arg z - 2 k pi / w| <= pi / (2w).
  bool in_sector = false;
};

struct RootReport {
  int w = 0;
  /// Indexed by sector, k = 0 .. w-1.
  std::vector<SectorRoot> roots;
  /// max over k != 0 of |2 / z_k|.
  double beta0 = 0.0;
  /// 1 - log2(beta0) = log2 min_{k != 0} |z_k|.
  double delta = 0.0;
  /// True when the companion-matrix solver replaced the fixed-point iteration.
  bool fallback = false;
};

/// All w roots of z^w + z - 2, one per sector. For w >= 8 each root is the
/// fixed point of f_k(z) = (2 - z)^{1/w} e^{2 pi i k / w} (principal branch),
/// iterated from e^{2 pi i k / w} until successive iterates differ by less
/// than 1e-13. Smaller w use polished companion-matrix roots assigned to the
/// nearest sector. Throws DomainError for w < 2 and NumericalError when an
/// iteration fails to converge, a residual exceeds 1e-10, or a sector does
/// not receive exactly one root.
RootReport find_roots(int w);

/// log2 min_{k != 0} |z_k|.
double delta_of(int w);

/// log2(1 + 3 pi^2 / w^3).
double delta_lower_bound(int w);

/// Smallest w0 in [2, w_max] such that delta_of(w) >= delta_lower_bound(w)
/// for every w in [w0, w_max]; w_max + 1 if the bound fails at w_max.
int delta_bound_threshold(int w_max);

/// Least-squares slope of log(2^delta(w) - 1) against log w over
/// w_lo..w_hi.
double delta_decay_exponent(int w_lo, int w_hi);

}  // namespace ajsf
