#pragma once

// The constant-digit fixed point xi = [3+4i; 3+4i, ...], the diameter
// sandwich constant gamma and the separation constant k.

#include <json.hpp>

#include "hurwitz/gaussian.hpp"

namespace hurwitz {

struct SeparationConstants {
  mpfr_prec_t precision = 0;
  BigComplex xi;           // root of xi^2 - (3+4i) xi - 1 = 0 with |xi| > 1
  BigComplex xi_iterated;  // limit of xi -> 3+4i + 1/xi
  int iterations = 0;
  BigFloat abs_xi;
  BigFloat gamma_big;      // 2|xi|/(|xi|+1)^2
  double solver_gap = 0;   // |xi - xi_iterated|
  double abs_xi_d = 0;
  double gamma = 0;
  double rho = 0;          // 1/(sqrt8 - 1/sqrt2): bound on |alpha| when |a_1(alpha)| >= sqrt8
  double k_sep = 0;        // 1 - 2 rho
};

SeparationConstants derive_constants(mpfr_prec_t prec = BigFloat::kDefaultPrecision);

// Cached 256-bit instance.
const SeparationConstants& constants();

nlohmann::ordered_json constants_to_json(const SeparationConstants& c);

}  // namespace hurwitz
