#include <cmath>

#include "hurwitz/kernels.hpp"

namespace hurwitz::kernels::scalar {

double sum_exp_scaled(std::span<const double> x, double s) {
  double sum = 0.0;
  for (double v : x) sum += std::exp(s * v);
  return sum;
}

void child_log_norms(double q_prev_re, double q_prev_im, double q_re, double q_im,
                     std::span<const double> b_re, std::span<const double> b_im,
                     std::span<double> out) {
  const std::size_t n = b_re.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double re = b_re[i] * q_re - b_im[i] * q_im + q_prev_re;
    const double im = b_re[i] * q_im + b_im[i] * q_re + q_prev_im;
    out[i] = std::log(re * re + im * im);
  }
}

void region_mask(std::span<const double> x, std::span<const double> y,
                 std::span<const double> cx, std::span<const double> cy,
                 std::span<std::uint8_t> out) {
  const std::size_t n = x.size();
  const std::size_t m = cx.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool inside = x[i] > -0.5 && x[i] < 0.5 && y[i] > -0.5 && y[i] < 0.5;
    for (std::size_t k = 0; inside && k < m; ++k) {
      const double dx = x[i] - cx[k];
      const double dy = y[i] - cy[k];
      inside = dx * dx + dy * dy > 1.0;
    }
    out[i] = inside ? 1 : 0;
  }
}

double lattice_row_power_sum(double y2, double x_lo, double x_hi, double t) {
  const double half = -0.5 * t;
  double sum = 0.0;
  for (double xv = x_lo; xv <= x_hi; xv += 1.0) {
    sum += std::exp(half * std::log(xv * xv + y2));
  }
  return sum;
}

}  // namespace hurwitz::kernels::scalar
