#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "hurwitz/kernels.hpp"

namespace hurwitz::kernels {
namespace {

// -1 = automatic, otherwise static_cast<int>(Isa).
std::atomic<int> g_override{-1};

bool host_has_avx2() {
#if defined(HURWITZ_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa env_choice(Isa fallback) {
  const char* env = std::getenv("HURWITZ_KERNEL_ISA");
  if (env == nullptr) return fallback;
  const std::string v(env);
  if (v == "scalar") return Isa::kScalar;
  if (v == "avx2" && host_has_avx2()) return Isa::kAvx2;
  return fallback;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = host_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
  return isa;
}

Isa active_isa() {
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  static const Isa from_env = env_choice(detected_isa());
  return from_env;
}

void set_isa_override(std::optional<Isa> isa) {
  if (!isa) {
    g_override.store(-1);
    return;
  }
  if (*isa == Isa::kAvx2 && detected_isa() != Isa::kAvx2) isa = Isa::kScalar;
  g_override.store(static_cast<int>(*isa));
}

#if defined(HURWITZ_HAVE_AVX2_TU)
#define HURWITZ_DISPATCH(call)                          \
  do {                                                  \
    if (active_isa() == Isa::kAvx2) return avx2::call;  \
    return scalar::call;                                \
  } while (0)
#else
#define HURWITZ_DISPATCH(call) return scalar::call
#endif

double sum_exp_scaled(std::span<const double> x, double s) {
  HURWITZ_DISPATCH(sum_exp_scaled(x, s));
}

void child_log_norms(double q_prev_re, double q_prev_im, double q_re, double q_im,
                     std::span<const double> b_re, std::span<const double> b_im,
                     std::span<double> out) {
  HURWITZ_DISPATCH(child_log_norms(q_prev_re, q_prev_im, q_re, q_im, b_re, b_im, out));
}

bool child_norms_exact_in_double(double q_prev_re, double q_prev_im, double q_re, double q_im,
                                 double max_digit_component) {
  constexpr double kLimit = 9007199254740992.0;  // 2^53
  const double qmax = std::max(std::abs(q_re), std::abs(q_im));
  const double pmax = std::max(std::abs(q_prev_re), std::abs(q_prev_im));
  // |component| <= 2 * max_digit * qmax + pmax, and the norm sums two squares.
  const double comp = 2.0 * max_digit_component * qmax + pmax;
  return comp * comp * 2.0 < kLimit;
}

void region_mask(std::span<const double> x, std::span<const double> y,
                 std::span<const double> cx, std::span<const double> cy,
                 std::span<std::uint8_t> out) {
  HURWITZ_DISPATCH(region_mask(x, y, cx, cy, out));
}

double lattice_power_sum(std::int64_t min_norm, std::int64_t max_norm, double t) {
  if (max_norm < min_norm) return 0.0;
  const auto isqrt = [](std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
  };
  const bool vector = active_isa() == Isa::kAvx2;
  const auto row = [&](double y2, double lo, double hi) {
#if defined(HURWITZ_HAVE_AVX2_TU)
    if (vector) return avx2::lattice_row_power_sum(y2, lo, hi, t);
#endif
    return scalar::lattice_row_power_sum(y2, lo, hi, t);
  };
  const std::int64_t ymax = isqrt(max_norm);
  double total = 0.0;
  for (std::int64_t y = -ymax; y <= ymax; ++y) {
    const std::int64_t y2 = y * y;
    const std::int64_t xmax = isqrt(max_norm - y2);
    // Points with x^2 < min_norm - y^2 are excluded.
    std::int64_t xin = -1;  // largest |x| that is still too small
    if (min_norm - y2 > 0) {
      const std::int64_t need = min_norm - y2;  // x^2 >= need
      xin = isqrt(need - 1);
    }
    if (xin < 0) {
      total += row(static_cast<double>(y2), static_cast<double>(-xmax), static_cast<double>(xmax));
    } else if (xin < xmax) {
      // x and -x contribute equally.
      total += 2.0 * row(static_cast<double>(y2), static_cast<double>(xin + 1),
                         static_cast<double>(xmax));
    }
  }
  (void)vector;
  return total;
}

}  // namespace hurwitz::kernels
