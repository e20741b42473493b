#include "ajsf/wnaf_roots.hpp"

#include <cmath>
#include <numbers>

#include "ajsf/error.hpp"
#include "ajsf/spectral.hpp"

namespace ajsf {

namespace {

using cd = std::complex<double>;

constexpr double kStepTolerance = 1e-13;
constexpr double kResidualTolerance = 1e-10;
constexpr int kMaxIterations = 10000;
constexpr int kFixedPointMinWidth = 8;

double residual_of(cd z, int w) { return std::abs(std::pow(z, w) + z - 2.0); }

// Principal branch of the w-th root.
cd principal_root(cd a, int w) {
  return std::exp((std::log(std::abs(a)) + cd(0.0, std::arg(a))) / static_cast<double>(w));
}

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a > std::numbers::pi) a -= two_pi;
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

bool sector_member(cd z, int k, int w) {
  const double target = 2.0 * std::numbers::pi * k / w;
  return std::abs(z) <= 1.0 + 3.0 / w &&
         std::fabs(wrap_angle(std::arg(z) - target)) <= std::numbers::pi / (2.0 * w) + 1e-15;
}

int sector_of(cd z, int w) {
  double a = std::arg(z);
  if (a < 0) a += 2.0 * std::numbers::pi;
  const int k = static_cast<int>(std::lround(a * w / (2.0 * std::numbers::pi)));
  return ((k % w) + w) % w;
}

}  // namespace

RootReport find_roots(int w) {
  if (w < 2) throw DomainError("w must be >= 2");
  RootReport rep;
  rep.w = w;
  rep.roots.resize(static_cast<std::size_t>(w));
  std::vector<bool> filled(static_cast<std::size_t>(w), false);

  if (w < kFixedPointMinWidth) {
    rep.fallback = true;
    std::vector<double> coeffs(static_cast<std::size_t>(w) + 1, 0.0);
    coeffs[0] = -2.0;
    coeffs[1] = 1.0;
    coeffs[static_cast<std::size_t>(w)] += 1.0;
    for (cd z : numeric_roots(coeffs)) {
      const int k = sector_of(z, w);
      if (k == 0) z = 1.0;
      if (filled[static_cast<std::size_t>(k)]) throw NumericalError("two roots in one sector");
      filled[static_cast<std::size_t>(k)] = true;
      rep.roots[static_cast<std::size_t>(k)].z = z;
    }
  } else {
    for (int k = 0; k < w; ++k) {
      const cd rot = std::polar(1.0, 2.0 * std::numbers::pi * k / w);
      cd z = k == 0 ? cd(1.0, 0.0) : rot;
      int it = 0;
      for (; it < kMaxIterations; ++it) {
        const cd next = principal_root(2.0 - z, w) * rot;
        const double step = std::abs(next - z);
        z = next;
        if (step < kStepTolerance) break;
      }
      if (it == kMaxIterations) throw NumericalError("fixed-point iteration did not converge in sector " + std::to_string(k));
      filled[static_cast<std::size_t>(k)] = true;
      rep.roots[static_cast<std::size_t>(k)].z = k == 0 ? cd(1.0, 0.0) : z;
      rep.roots[static_cast<std::size_t>(k)].iterations = it + 1;
    }
  }

  for (int k = 0; k < w; ++k) {
    if (!filled[static_cast<std::size_t>(k)]) throw NumericalError("sector " + std::to_string(k) + " has no root");
    SectorRoot& r = rep.roots[static_cast<std::size_t>(k)];
    r.k = k;
    r.residual = residual_of(r.z, w);
    if (r.residual > kResidualTolerance) throw NumericalError("root residual above tolerance in sector " + std::to_string(k));
    r.eigenvalue = 2.0 / r.z;
    r.in_sector = sector_member(r.z, k, w);
    if (k != 0) rep.beta0 = std::max(rep.beta0, std::abs(r.eigenvalue));
  }
  rep.delta = 1.0 - std::log2(rep.beta0);
  return rep;
}

double delta_of(int w) {
  const RootReport rep = find_roots(w);
  double m = INFINITY;
  for (const auto& r : rep.roots) {
    if (r.k != 0) m = std::min(m, std::abs(r.z));
  }
  return std::log2(m);
}

double delta_lower_bound(int w) {
  const double ww = static_cast<double>(w);
  return std::log2(1.0 + 3.0 * std::numbers::pi * std::numbers::pi / (ww * ww * ww));
}

int delta_bound_threshold(int w_max) {
  if (w_max < 2) throw DomainError("w_max must be >= 2");
  int threshold = w_max + 1;
  for (int w = w_max; w >= 2; --w) {
    if (delta_of(w) < delta_lower_bound(w)) break;
    threshold = w;
  }
  return threshold;
}

double delta_decay_exponent(int w_lo, int w_hi) {
  if (w_lo < 2 || w_hi <= w_lo) throw DomainError("need 2 <= w_lo < w_hi");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = w_hi - w_lo + 1;
  for (int w = w_lo; w <= w_hi; ++w) {
    const double x = std::log(static_cast<double>(w));
    const double y = std::log(std::exp2(delta_of(w)) - 1.0);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace ajsf
