// AVX2/FMA variants of the kernels in scalar.cpp. This translation unit is
// compiled with -mavx2 -mfma and must only be entered after dispatch.cpp has
// confirmed host support.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "hurwitz/kernels.hpp"

namespace hurwitz::kernels::avx2 {
namespace {

constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kLog2e = 1.44269504088896338700e+00;
constexpr double kSqrt2 = 1.41421356237309514547e+00;

inline __m256d round_to_nearest(__m256d x) {
  return _mm256_round_pd(x, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
}

// exp(x) for x in [-708, 709]; lanes below -708 return 0.
inline __m256d exp4(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-708.0);
  const __m256d hi = _mm256_set1_pd(709.0);
  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d n = round_to_nearest(_mm256_mul_pd(x, _mm256_set1_pd(kLog2e)));
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Hi), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Lo), r);

  // Taylor polynomial of degree 13 on |r| <= ln2/2.
  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

  // 2^n through the exponent field; n is integral and |n| < 2^51.
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 2^52 + 2^51
  __m256i ni = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)),
                                _mm256_castpd_si256(magic));
  ni = _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
  const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(ni));
  return _mm256_andnot_pd(underflow, result);
}

// Natural logarithm for positive normal inputs.
inline __m256d log4(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

  // Biased exponent converted to double via the 2^52 trick.
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  const __m256d two52 = _mm256_set1_pd(4503599627370496.0);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(biased, _mm256_castpd_si256(two52))), two52);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d f = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d f2 = _mm256_mul_pd(f, f);
  // 2 atanh(f) = 2 f (1 + f^2/3 + f^4/5 + ... + f^22/23).
  __m256d p = _mm256_set1_pd(1.0 / 23.0);
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 21.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 19.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 17.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 15.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 13.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 11.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 9.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 7.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 5.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 3.0));
  // log m = 2f + 2f*f2*p
  const __m256d two_f = _mm256_add_pd(f, f);
  const __m256d tail = _mm256_mul_pd(_mm256_mul_pd(two_f, f2), p);
  const __m256d log_m = _mm256_add_pd(two_f, _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Lo), tail));
  return _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Hi), log_m);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void log_array(std::span<const double> x, std::span<double> out) {
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) _mm256_storeu_pd(&out[i], log4(_mm256_loadu_pd(&x[i])));
  for (; i < x.size(); ++i) {
    alignas(32) double tmp[4] = {x[i], 1.0, 1.0, 1.0};
    _mm256_store_pd(tmp, log4(_mm256_load_pd(tmp)));
    out[i] = tmp[0];
  }
}

void exp_array(std::span<const double> x, std::span<double> out) {
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) _mm256_storeu_pd(&out[i], exp4(_mm256_loadu_pd(&x[i])));
  for (; i < x.size(); ++i) {
    alignas(32) double tmp[4] = {x[i], 0.0, 0.0, 0.0};
    _mm256_store_pd(tmp, exp4(_mm256_load_pd(tmp)));
    out[i] = tmp[0];
  }
}

double sum_exp_scaled(std::span<const double> x, double s) {
  const __m256d sv = _mm256_set1_pd(s);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    acc = _mm256_add_pd(acc, exp4(_mm256_mul_pd(sv, _mm256_loadu_pd(&x[i]))));
  }
  if (i < x.size()) {
    alignas(32) double tmp[4] = {0, 0, 0, 0};
    const std::size_t rest = x.size() - i;
    std::memcpy(tmp, &x[i], rest * sizeof(double));
    const __m256d lane = _mm256_set_pd(rest > 3 ? 1.0 : 0.0, rest > 2 ? 1.0 : 0.0,
                                       rest > 1 ? 1.0 : 0.0, 1.0);
    const __m256d valid = _mm256_cmp_pd(lane, _mm256_set1_pd(0.5), _CMP_GT_OQ);
    const __m256d v = exp4(_mm256_mul_pd(sv, _mm256_load_pd(tmp)));
    acc = _mm256_add_pd(acc, _mm256_and_pd(valid, v));
  }
  return hsum(acc);
}

void child_log_norms(double q_prev_re, double q_prev_im, double q_re, double q_im,
                     std::span<const double> b_re, std::span<const double> b_im,
                     std::span<double> out) {
  const __m256d pr = _mm256_set1_pd(q_prev_re);
  const __m256d pi = _mm256_set1_pd(q_prev_im);
  const __m256d qr = _mm256_set1_pd(q_re);
  const __m256d qi = _mm256_set1_pd(q_im);
  const std::size_t n = b_re.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d br = _mm256_loadu_pd(&b_re[i]);
    const __m256d bi = _mm256_loadu_pd(&b_im[i]);
    // All products are exact integers below 2^53, so fused and unfused
    // evaluation agree bit for bit.
    const __m256d re = _mm256_fnmadd_pd(bi, qi, _mm256_fmadd_pd(br, qr, pr));
    const __m256d im = _mm256_fmadd_pd(bi, qr, _mm256_fmadd_pd(br, qi, pi));
    const __m256d norm = _mm256_fmadd_pd(re, re, _mm256_mul_pd(im, im));
    _mm256_storeu_pd(&out[i], log4(norm));
  }
  if (i < n) {
    alignas(32) double norms[4] = {1.0, 1.0, 1.0, 1.0};
    for (std::size_t k = i; k < n; ++k) {
      const double re = b_re[k] * q_re - b_im[k] * q_im + q_prev_re;
      const double im = b_re[k] * q_im + b_im[k] * q_re + q_prev_im;
      norms[k - i] = re * re + im * im;
    }
    alignas(32) double logs[4];
    _mm256_store_pd(logs, log4(_mm256_load_pd(norms)));
    for (std::size_t k = i; k < n; ++k) out[k] = logs[k - i];
  }
}

void region_mask(std::span<const double> x, std::span<const double> y,
                 std::span<const double> cx, std::span<const double> cy,
                 std::span<std::uint8_t> out) {
  const __m256d lo = _mm256_set1_pd(-0.5);
  const __m256d hi = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(&x[i]);
    const __m256d yv = _mm256_loadu_pd(&y[i]);
    __m256d inside = _mm256_and_pd(_mm256_cmp_pd(xv, lo, _CMP_GT_OQ),
                                   _mm256_cmp_pd(xv, hi, _CMP_LT_OQ));
    inside = _mm256_and_pd(inside, _mm256_cmp_pd(yv, lo, _CMP_GT_OQ));
    inside = _mm256_and_pd(inside, _mm256_cmp_pd(yv, hi, _CMP_LT_OQ));
    for (std::size_t k = 0; k < cx.size(); ++k) {
      const __m256d dx = _mm256_sub_pd(xv, _mm256_set1_pd(cx[k]));
      const __m256d dy = _mm256_sub_pd(yv, _mm256_set1_pd(cy[k]));
      const __m256d d2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
      inside = _mm256_and_pd(inside, _mm256_cmp_pd(d2, one, _CMP_GT_OQ));
    }
    const int bits = _mm256_movemask_pd(inside);
    out[i] = bits & 1;
    out[i + 1] = (bits >> 1) & 1;
    out[i + 2] = (bits >> 2) & 1;
    out[i + 3] = (bits >> 3) & 1;
  }
  if (i < n) scalar::region_mask(x.subspan(i), y.subspan(i), cx, cy, out.subspan(i));
}

double lattice_row_power_sum(double y2, double x_lo, double x_hi, double t) {
  const __m256d half = _mm256_set1_pd(-0.5 * t);
  const __m256d yv = _mm256_set1_pd(y2);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d xv = _mm256_add_pd(_mm256_set1_pd(x_lo), _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
  __m256d acc = _mm256_setzero_pd();
  const double count = x_hi - x_lo + 1.0;
  double done = 0.0;
  for (; done + 4.0 <= count; done += 4.0) {
    const __m256d norm = _mm256_fmadd_pd(xv, xv, yv);
    acc = _mm256_add_pd(acc, exp4(_mm256_mul_pd(half, log4(norm))));
    xv = _mm256_add_pd(xv, step);
  }
  if (done < count) {
    const __m256d limit = _mm256_set1_pd(x_hi);
    const __m256d valid = _mm256_cmp_pd(xv, limit, _CMP_LE_OQ);
    // Inactive lanes get norm 1 so the log stays finite, then are masked.
    const __m256d norm = _mm256_blendv_pd(_mm256_set1_pd(1.0), _mm256_fmadd_pd(xv, xv, yv), valid);
    acc = _mm256_add_pd(acc, _mm256_and_pd(valid, exp4(_mm256_mul_pd(half, log4(norm)))));
  }
  return hsum(acc);
}

}  // namespace hurwitz::kernels::avx2

#endif
