#pragma once

// Hurwitz continued fractions: shift map, expansions, Q-pairs, evaluation
// and the Moebius maps t and v attached to a digit prefix.

#include <json.hpp>

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hurwitz/gaussian.hpp"
#include "hurwitz/parse.hpp"

namespace hurwitz {

// (p_{n-1}, p_n, q_{n-1}, q_n).
struct QPair {
  GaussianInt p_prev{1};
  GaussianInt p{0};
  GaussianInt q_prev{0};
  GaussianInt q{1};

  QPair advance(const GaussianInt& a) const { return {p, a * p + p_prev, q, a * q + q_prev}; }
  // p_n q_{n-1} - p_{n-1} q_n
  GaussianInt det() const { return p * q_prev - p_prev * q; }
};

QPair qpair_of(std::span<const GaussianInt> digits);

struct HcfExpansion {
  GaussianInt a0;
  std::vector<GaussianInt> digits;
  bool terminated = false;
  // Entry k holds (p_{k-1}, q_{k-1}); entries 0 and 1 are the seeds.
  std::vector<std::pair<GaussianInt, GaussianInt>> q_pairs{{GaussianInt(1), GaussianInt(0)},
                                                           {GaussianInt(0), GaussianInt(1)}};
  // Float inputs only: certified absolute bits of the last orbit point.
  std::optional<int> certified_bits;

  const GaussianInt& p(int n) const { return q_pairs.at(static_cast<std::size_t>(n + 1)).first; }
  const GaussianInt& q(int n) const { return q_pairs.at(static_cast<std::size_t>(n + 1)).second; }
  int depth() const { return static_cast<int>(digits.size()); }
};

struct ExactState {
  GaussianRational z;
  std::size_t step = 0;
};

struct FloatState {
  BigComplex z;
  double abs_error = 0.0;  // bound on |z - exact orbit point|
  std::size_t step = 0;

  int certified_bits() const;
};

template <class State>
struct Shift {
  GaussianInt digit;
  State next;
};

// Throws ZeroInput at z = 0.
Shift<ExactState> shift_map(const ExactState& s);
// Throws ZeroInput, AmbiguousRounding (strict), PrecisionExhausted.
Shift<FloatState> shift_map(const FloatState& s, BoundaryPolicy policy = BoundaryPolicy::kStrict,
                            int min_certified_bits = 32);

HcfExpansion expand(const GaussianRational& w, int max_depth);

struct FloatExpandOptions {
  BoundaryPolicy policy = BoundaryPolicy::kStrict;
  int min_certified_bits = 32;
};
HcfExpansion expand(const BigComplex& w, int max_depth, const FloatExpandOptions& opts = {});
HcfExpansion expand(const Number& w, int max_depth, const FloatExpandOptions& opts = {});

// [0; a_1, ..., a_n] via the Q-pair recurrence. Throws DivisionByZero.
GaussianRational evaluate(std::span<const GaussianInt> digits);
// [0; a_1, ..., a_{m-1}, a_m + w]; returns w itself for an empty digit list.
GaussianRational evaluate(std::span<const GaussianInt> digits, const GaussianRational& tail);
BigComplex evaluate(std::span<const GaussianInt> digits, const BigComplex& tail);

// t(z) = (q_n z - p_n)/(-q_{n-1} z + p_{n-1}),  v(z) = (p_{n-1} z + p_n)/(q_{n-1} z + q_n).
GaussianRational moebius_t(std::span<const GaussianInt> prefix, const GaussianRational& z);
GaussianRational moebius_v(std::span<const GaussianInt> prefix, const GaussianRational& z);
BigComplex moebius_t(std::span<const GaussianInt> prefix, const BigComplex& z);
BigComplex moebius_v(std::span<const GaussianInt> prefix, const BigComplex& z);

// |w - P_n/q_n| |q_n|^2 for the n-th convergent of w (n >= 1).
double approximation_quality(const Number& w, const HcfExpansion& e, int n);

// {"a0", "digits", "convergents": [{"p","q","abs_q","quality"}], "terminated"}.
// Convergent numerators are those of w itself: a0 q_n + p_n.
nlohmann::ordered_json expansion_to_json(const HcfExpansion& e, const Number& w);

}  // namespace hurwitz
