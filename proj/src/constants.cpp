#include "hurwitz/constants.hpp"

#include <cmath>

namespace hurwitz {
namespace {

// Principal square root.
BigComplex complex_sqrt(const BigComplex& w) {
  const mpfr_prec_t prec = w.precision();
  const BigFloat r = w.abs();
  const BigFloat two(2.0, prec);
  BigFloat re = sqrt((r + w.re()) / two);
  BigFloat im = sqrt((r - w.re()) / two);
  if (w.im().sign() < 0) im = -im;
  return {re, im};
}

}  // namespace

SeparationConstants derive_constants(mpfr_prec_t prec) {
  SeparationConstants c;
  c.precision = prec;
  const BigComplex b(3.0, 4.0, prec);
  const BigComplex four(4.0, 0.0, prec);
  const BigComplex two(2.0, 0.0, prec);

  // Larger root of xi^2 - b xi - 1.
  const BigComplex disc = complex_sqrt(b * b + four);
  const BigComplex r1 = (b + disc) / two;
  const BigComplex r2 = (b - disc) / two;
  c.xi = r1.abs() > r2.abs() ? r1 : r2;

  BigComplex x = b;
  const BigFloat stop = pow2(8 - static_cast<long>(prec), prec);
  for (c.iterations = 1; c.iterations <= 10000; ++c.iterations) {
    BigComplex next = b + x.reciprocal();
    const BigFloat step = (next - x).abs();
    x = std::move(next);
    if (step < stop) break;
  }
  c.xi_iterated = x;
  c.solver_gap = (c.xi - c.xi_iterated).abs().to_double();

  c.abs_xi = c.xi.abs();
  const BigFloat one(1.0, prec);
  const BigFloat denom = (c.abs_xi + one) * (c.abs_xi + one);
  c.gamma_big = BigFloat(2.0, prec) * c.abs_xi / denom;
  c.abs_xi_d = c.abs_xi.to_double();
  c.gamma = c.gamma_big.to_double();

  const double s8 = std::sqrt(8.0);
  c.rho = 1.0 / (s8 - 1.0 / std::sqrt(2.0));
  c.k_sep = 1.0 - 2.0 * c.rho;
  return c;
}

const SeparationConstants& constants() {
  static const SeparationConstants c = derive_constants();
  return c;
}

nlohmann::ordered_json constants_to_json(const SeparationConstants& c) {
  nlohmann::ordered_json j;
  j["precision_bits"] = c.precision;
  j["xi"] = c.xi.to_string(40);
  j["xi_fixed_point"] = c.xi_iterated.to_string(40);
  j["fixed_point_iterations"] = c.iterations;
  j["solver_gap"] = c.solver_gap;
  j["abs_xi"] = c.abs_xi.to_string(40);
  j["gamma"] = c.gamma_big.to_string(40);
  j["rho"] = c.rho;
  j["k_sep"] = c.k_sep;
  return j;
}

}  // namespace hurwitz
