#include "hurwitz/hcf.hpp"

#include <cmath>
#include <limits>

#include "hurwitz/errors.hpp"

namespace hurwitz {

QPair qpair_of(std::span<const GaussianInt> digits) {
  QPair qp;
  for (const auto& a : digits) qp = qp.advance(a);
  return qp;
}

int FloatState::certified_bits() const {
  if (abs_error <= 0.0) return std::numeric_limits<int>::max();
  return static_cast<int>(std::floor(-std::log2(abs_error)));
}

Shift<ExactState> shift_map(const ExactState& s) {
  if (s.z.is_zero()) throw ZeroInput("shift map at z = 0 (expansion terminated)");
  const GaussianRational u = s.z.reciprocal();
  GaussianInt a = nearest_gaussian(u);
  // gcd(num - a den, den) = gcd(num, den) = 1.
  GaussianRational next = GaussianRational::coprime(u.num() - a * u.den(), u.den());
  return {std::move(a), ExactState{std::move(next), s.step + 1}};
}

Shift<FloatState> shift_map(const FloatState& s, BoundaryPolicy policy, int min_certified_bits) {
  if (s.z.is_zero()) throw ZeroInput("shift map at z = 0 (expansion terminated)");
  const double r = s.z.abs().to_double();
  const double e = s.abs_error;
  if (r <= e) {
    throw PrecisionExhausted("orbit point indistinguishable from 0 at step " +
                             std::to_string(s.step));
  }
  const double ulp = std::ldexp(1.0, -static_cast<int>(s.z.precision()));
  // |1/z - 1/z'| <= e/(|z|(|z|-e)), plus rounding in the reciprocal and the
  // digit subtraction.
  const double e_next = e / (r * (r - e)) + 4.0 * ulp / r;
  const BigComplex u = s.z.reciprocal();
  GaussianInt a = nearest_gaussian(u, policy, e_next);
  const BigComplex ac(GaussianRational(a), s.z.precision());
  FloatState next{u - ac, e_next, s.step + 1};
  if (next.certified_bits() < min_certified_bits) {
    throw PrecisionExhausted("certified bits fell to " + std::to_string(next.certified_bits()) +
                             " at step " + std::to_string(next.step));
  }
  return {std::move(a), std::move(next)};
}

namespace {

void push_digit(HcfExpansion& e, QPair& qp, const GaussianInt& a) {
  e.digits.push_back(a);
  qp = qp.advance(a);
  e.q_pairs.emplace_back(qp.p, qp.q);
}

}  // namespace

HcfExpansion expand(const GaussianRational& w, int max_depth) {
  if (max_depth < 1) throw PreconditionViolation("max_depth must be >= 1");
  HcfExpansion e;
  e.a0 = nearest_gaussian(w);
  ExactState s{w - GaussianRational(e.a0), 0};
  QPair qp;
  while (e.depth() < max_depth) {
    if (s.z.is_zero()) break;
    auto step = shift_map(s);
    push_digit(e, qp, step.digit);
    s = std::move(step.next);
  }
  e.terminated = s.z.is_zero();
  return e;
}

HcfExpansion expand(const BigComplex& w, int max_depth, const FloatExpandOptions& opts) {
  if (max_depth < 1) throw PreconditionViolation("max_depth must be >= 1");
  HcfExpansion e;
  const mpfr_prec_t prec = w.precision();
  const double mag = std::max(1.0, w.abs().to_double());
  const double e0 = std::ldexp(mag, 1 - static_cast<int>(prec));
  e.a0 = nearest_gaussian(w, opts.policy, e0);
  FloatState s{w - BigComplex(GaussianRational(e.a0), prec), e0, 0};
  QPair qp;
  while (e.depth() < max_depth) {
    if (s.z.is_zero()) break;
    auto step = shift_map(s, opts.policy, opts.min_certified_bits);
    push_digit(e, qp, step.digit);
    s = std::move(step.next);
  }
  e.terminated = s.z.is_zero();
  e.certified_bits = s.certified_bits();
  return e;
}

HcfExpansion expand(const Number& w, int max_depth, const FloatExpandOptions& opts) {
  if (const auto* q = std::get_if<GaussianRational>(&w)) return expand(*q, max_depth);
  return expand(std::get<BigComplex>(w), max_depth, opts);
}

GaussianRational evaluate(std::span<const GaussianInt> digits) {
  const QPair qp = qpair_of(digits);
  if (qp.q.is_zero()) throw DivisionByZero("vanishing denominator q_n: sequence is not admissible");
  // p_n q_{n-1} - p_{n-1} q_n is a unit, so p_n and q_n are coprime.
  return GaussianRational::coprime(qp.p, qp.q);
}

GaussianRational evaluate(std::span<const GaussianInt> digits, const GaussianRational& tail) {
  if (digits.empty()) return tail;
  const QPair qp = qpair_of(digits.first(digits.size() - 1));
  const GaussianRational x = GaussianRational(digits.back()) + tail;
  const GaussianRational den = x * GaussianRational(qp.q) + GaussianRational(qp.q_prev);
  if (den.is_zero()) throw DivisionByZero("vanishing denominator in tail evaluation");
  return (x * GaussianRational(qp.p) + GaussianRational(qp.p_prev)) / den;
}

BigComplex evaluate(std::span<const GaussianInt> digits, const BigComplex& tail) {
  if (digits.empty()) return tail;
  const mpfr_prec_t prec = tail.precision();
  const QPair qp = qpair_of(digits.first(digits.size() - 1));
  const auto big = [prec](const GaussianInt& g) { return BigComplex(GaussianRational(g), prec); };
  const BigComplex x = big(digits.back()) + tail;
  const BigComplex den = x * big(qp.q) + big(qp.q_prev);
  if (den.is_zero()) throw DivisionByZero("vanishing denominator in tail evaluation");
  return (x * big(qp.p) + big(qp.p_prev)) / den;
}

GaussianRational moebius_t(std::span<const GaussianInt> prefix, const GaussianRational& z) {
  const QPair qp = qpair_of(prefix);
  const GaussianRational den = GaussianRational(qp.p_prev) - GaussianRational(qp.q_prev) * z;
  if (den.is_zero()) throw DivisionByZero("pole of t");
  return (GaussianRational(qp.q) * z - GaussianRational(qp.p)) / den;
}

GaussianRational moebius_v(std::span<const GaussianInt> prefix, const GaussianRational& z) {
  const QPair qp = qpair_of(prefix);
  const GaussianRational den = GaussianRational(qp.q_prev) * z + GaussianRational(qp.q);
  if (den.is_zero()) throw DivisionByZero("pole of v");
  return (GaussianRational(qp.p_prev) * z + GaussianRational(qp.p)) / den;
}

BigComplex moebius_t(std::span<const GaussianInt> prefix, const BigComplex& z) {
  const mpfr_prec_t prec = z.precision();
  const QPair qp = qpair_of(prefix);
  const auto big = [prec](const GaussianInt& g) { return BigComplex(GaussianRational(g), prec); };
  const BigComplex den = big(qp.p_prev) - big(qp.q_prev) * z;
  if (den.is_zero()) throw DivisionByZero("pole of t");
  return (big(qp.q) * z - big(qp.p)) / den;
}

BigComplex moebius_v(std::span<const GaussianInt> prefix, const BigComplex& z) {
  const mpfr_prec_t prec = z.precision();
  const QPair qp = qpair_of(prefix);
  const auto big = [prec](const GaussianInt& g) { return BigComplex(GaussianRational(g), prec); };
  const BigComplex den = big(qp.q_prev) * z + big(qp.q);
  if (den.is_zero()) throw DivisionByZero("pole of v");
  return (big(qp.p_prev) * z + big(qp.p)) / den;
}

double approximation_quality(const Number& w, const HcfExpansion& e, int n) {
  const GaussianInt P = e.a0 * e.q(n) + e.p(n);
  const GaussianInt& q = e.q(n);
  if (const auto* exact = std::get_if<GaussianRational>(&w)) {
    // |w q - P|^2 |q|^2, exact, then one rounding.
    const GaussianRational d = *exact * GaussianRational(q) - GaussianRational(P);
    const mpq_class sq = d.norm() * mpq_class(q.norm());
    return std::sqrt(sq.get_d());
  }
  const auto& z = std::get<BigComplex>(w);
  const mpfr_prec_t prec = z.precision();
  const BigComplex d = z * BigComplex(GaussianRational(q), prec) - BigComplex(GaussianRational(P), prec);
  return (d.abs() * sqrt(BigFloat(q.norm(), prec))).to_double();
}

nlohmann::ordered_json expansion_to_json(const HcfExpansion& e, const Number& w) {
  nlohmann::ordered_json out;
  out["a0"] = e.a0.to_string();
  auto digits = nlohmann::ordered_json::array();
  for (const auto& a : e.digits) digits.push_back(a.to_string());
  out["digits"] = std::move(digits);
  auto conv = nlohmann::ordered_json::array();
  for (int n = 1; n <= e.depth(); ++n) {
    nlohmann::ordered_json c;
    c["p"] = (e.a0 * e.q(n) + e.p(n)).to_string();
    c["q"] = e.q(n).to_string();
    c["abs_q"] = std::sqrt(e.q(n).norm().get_d());
    c["quality"] = approximation_quality(w, e, n);
    conv.push_back(std::move(c));
  }
  out["convergents"] = std::move(conv);
  out["terminated"] = e.terminated;
  if (e.certified_bits) out["certified_bits"] = *e.certified_bits;
  return out;
}

}  // namespace hurwitz
