#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64 hosts with AVX2+FMA, a vectorised version selected at runtime.
// The two are equivalence-tested in tests/test_kernels.cpp.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace hurwitz::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// Best ISA supported by the host (ignores overrides).
Isa detected_isa();

// ISA used by the dispatching entry points below. Honours set_isa_override()
// and the HURWITZ_KERNEL_ISA environment variable ("scalar" or "avx2").
Isa active_isa();

// Pass std::nullopt to return to automatic selection. Requesting an ISA the
// host cannot run falls back to scalar.
void set_isa_override(std::optional<Isa> isa);

// Sum of exp(s * x[i]).
double sum_exp_scaled(std::span<const double> x, double s);

// out[i] = log(|b_i * q + q_prev|^2) where b_i = b_re[i] + i b_im[i].
// Inputs must be integer valued with every intermediate product below 2^53
// in magnitude (see child_norms_exact_in_double); the norms are then exact
// and only the logarithm rounds.
void child_log_norms(double q_prev_re, double q_prev_im, double q_re, double q_im,
                     std::span<const double> b_re, std::span<const double> b_im,
                     std::span<double> out);

// True when child_log_norms computes exact norms for digits with
// |re|,|im| <= max_digit_component.
bool child_norms_exact_in_double(double q_prev_re, double q_prev_im, double q_re, double q_im,
                                 double max_digit_component);

// Interior membership of points in the open box (-1/2,1/2)^2 minus the closed
// unit disks centred at (cx[k], cy[k]). out[i] = 1 inside, 0 outside.
// Exact (no rounding anywhere) for dyadic points with at most 22 significant
// bits and small integer centres.
void region_mask(std::span<const double> x, std::span<const double> y,
                 std::span<const double> cx, std::span<const double> cy,
                 std::span<std::uint8_t> out);

// Sum over lattice points b with min_norm <= |b|^2 <= max_norm of
// |b|^(-t) = exp(-(t/2) log|b|^2). Requires min_norm >= 1.
double lattice_power_sum(std::int64_t min_norm, std::int64_t max_norm, double t);

namespace scalar {
double sum_exp_scaled(std::span<const double> x, double s);
void child_log_norms(double q_prev_re, double q_prev_im, double q_re, double q_im,
                     std::span<const double> b_re, std::span<const double> b_im,
                     std::span<double> out);
void region_mask(std::span<const double> x, std::span<const double> y,
                 std::span<const double> cx, std::span<const double> cy,
                 std::span<std::uint8_t> out);
double lattice_row_power_sum(double y2, double x_lo, double x_hi, double t);
}  // namespace scalar

namespace avx2 {
double sum_exp_scaled(std::span<const double> x, double s);
void child_log_norms(double q_prev_re, double q_prev_im, double q_re, double q_im,
                     std::span<const double> b_re, std::span<const double> b_im,
                     std::span<double> out);
void region_mask(std::span<const double> x, std::span<const double> y,
                 std::span<const double> cx, std::span<const double> cy,
                 std::span<std::uint8_t> out);
double lattice_row_power_sum(double y2, double x_lo, double x_hi, double t);
// Vectorised log/exp exposed for the accuracy tests.
void log_array(std::span<const double> x, std::span<double> out);
void exp_array(std::span<const double> x, std::span<double> out);
}  // namespace avx2

}  // namespace hurwitz::kernels
