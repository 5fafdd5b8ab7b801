#include "hurwitz/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hurwitz/errors.hpp"

namespace hurwitz {
namespace {

// Relative padding on floating evaluations of closed-form bounds.
constexpr double kPad = 1.0 + 1e-12;

std::int64_t isqrt(std::int64_t n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

bool digit_order(const LatticePoint& a, const LatticePoint& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

std::vector<LatticePoint> enumerate_annulus(std::int64_t min_norm, std::int64_t max_norm) {
  std::vector<LatticePoint> out;
  if (max_norm < min_norm || max_norm < 0) return out;
  const std::int64_t r = isqrt(max_norm);
  for (std::int64_t x = -r; x <= r; ++x) {
    for (std::int64_t y = -r; y <= r; ++y) {
      const std::int64_t n = x * x + y * y;
      if (n >= min_norm && n <= max_norm) out.push_back({x, y, n});
    }
  }
  std::sort(out.begin(), out.end(), digit_order);
  return out;
}

std::vector<LatticePoint> enumerate_sup_annulus(std::int64_t lo, std::int64_t hi) {
  std::vector<LatticePoint> out;
  if (hi < lo || hi < 0) return out;
  for (std::int64_t x = -hi; x <= hi; ++x) {
    for (std::int64_t y = -hi; y <= hi; ++y) {
      const std::int64_t m = std::max(std::abs(x), std::abs(y));
      if (m >= lo) out.push_back({x, y, x * x + y * y});
    }
  }
  std::sort(out.begin(), out.end(), digit_order);
  return out;
}

std::vector<LatticePoint> smallest_points(std::int64_t min_norm, std::size_t count) {
  if (count == 0) return {};
  // Grow the search radius until enough points are found.
  std::int64_t max_norm = std::max<std::int64_t>(min_norm, 1);
  std::vector<LatticePoint> pts;
  for (;;) {
    pts = enumerate_annulus(min_norm, max_norm);
    if (pts.size() >= count) break;
    max_norm = max_norm * 2 + 8;
  }
  const std::int64_t last = pts[count - 1].norm;
  std::size_t n = count;
  while (n < pts.size() && pts[n].norm == last) ++n;
  pts.resize(n);
  return pts;
}

double annulus_count_bound(double r) {
  if (r < 1.0) throw PreconditionViolation("annulus count bound needs r >= 1");
  return std::numbers::pi * (1.0 + std::numbers::sqrt2) * (2.0 * r + 1.0) * kPad;
}

double tail_power_bound(double R, double delta, double t) {
  if (!(t > 2.0) || R < 2.0 || delta < 0.0 || delta > R - 1.0) {
    throw PreconditionViolation("tail_power_bound needs t > 2, R >= 2, 0 <= delta <= R - 1");
  }
  // Annuli [R+k, R+k+1) hold at most C (2(R+k)+1) points, each term is at most
  // (R+k-delta)^-t, and f(rho) = C (2rho+1)(rho-delta)^-t decreases, so the
  // sum is at most f(R) + int_R^inf f.
  const double C = std::numbers::pi * (1.0 + std::numbers::sqrt2);
  const double u = R - delta;
  const double f_R = C * (2.0 * R + 1.0) * std::pow(u, -t);
  const double integral =
      C * (2.0 * std::pow(u, 2.0 - t) / (t - 2.0) + (2.0 * delta + 1.0) * std::pow(u, 1.0 - t) / (t - 1.0));
  return (f_R + integral) * kPad;
}

double lattice_tail_constant(double eps) {
  if (!(eps > 0.0)) throw PreconditionViolation("epsilon must be positive");
  // tail_power_bound(L, 0, 2+2eps) = C L^(-2eps) [(2L+1)/L^2 + 1/eps + 1/((1+2eps)L)]
  // and L >= 2 bounds the bracket.
  const double C = std::numbers::pi * (1.0 + std::numbers::sqrt2);
  return C * (1.25 + 1.0 / eps + 1.0 / (2.0 * (1.0 + 2.0 * eps))) * kPad;
}

}  // namespace hurwitz
