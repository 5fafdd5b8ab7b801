#pragma once

// One function per CLI command. Each returns the full report document; the
// front end only parses flags and renders. Errors propagate as exceptions.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/big_float.hpp"
#include "hurwitz/gaussian.hpp"

namespace hurwitz {

// The boundary policy applies to decimal (BigComplex) literals only.
nlohmann::ordered_json cmd_expand(const std::string& literal, int depth, mpfr_prec_t precision,
                                  BoundaryPolicy policy = BoundaryPolicy::kStrict);

nlohmann::ordered_json cmd_shapes();

nlohmann::ordered_json cmd_constants(mpfr_prec_t precision);

nlohmann::ordered_json cmd_cantor_demo(int depth, double tol, unsigned threads);

struct DimBoundsConfig {
  std::string filter = "annulus";  // annulus | lower | schedule | prefixed
  std::string scan;                // "" | M | epsilon
  double L = 3.0;
  double M = 50.0;
  bool L_given = false;
  double epsilon = 0.5;
  std::optional<double> s;
  int depth = 3;
  int from_depth = 0;
  double tol = 1e-3;
  bool bracket = false;
  bool early_exit = true;
  std::string diameters = "sandwich";  // sandwich | witness
  std::size_t window = 64;
  long n_max = 10000;
  std::vector<std::string> prefix;
  unsigned threads = 0;
};

// Throws NoBracket (from critical_exponent) when a bracket is requested and
// cannot be formed.
nlohmann::ordered_json cmd_dim_bounds(const DimBoundsConfig& cfg);

}  // namespace hurwitz
