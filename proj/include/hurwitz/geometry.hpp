#pragma once

// Cylinder geometry: the thirteen maximal feasible shapes, the digit
// transition system on them, admissibility, and cylinder diameter bounds.
//
// Every shape is the open box (-1/2,1/2)^2 minus closed unit disks centred at
// Gaussian integers among N8 = {+-1, +-i, +-1+-i}. Inversion maps lines and
// unit circles centred at Gaussian integers to the same family, so all
// transition decisions are exact integer computations.

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hurwitz/gaussian.hpp"
#include "hurwitz/hcf.hpp"

namespace hurwitz {

struct Centre {
  int re;
  int im;
  friend bool operator==(const Centre&, const Centre&) = default;
};

struct FeasibleShape {
  int rotation = 0;  // j, shape = i^j F_k
  int base = 4;      // k in 1..4

  static FeasibleShape full() { return {0, 4}; }
  // All thirteen shapes, F_4 first, then (k, j) for k = 1..3, j = 0..3.
  static const std::array<FeasibleShape, 13>& catalogue();

  std::vector<Centre> centres() const;
  int index() const;
  std::string name() const;

  friend bool operator==(const FeasibleShape&, const FeasibleShape&) = default;
};

struct RegionPredicate {
  std::vector<Centre> centres;

  // Open box minus the closed disks; exact.
  bool contains(const GaussianRational& z) const;
  // Strict mode throws AmbiguousBoundary within max(abs_error, 2^(8-prec))
  // of any boundary curve.
  bool contains(const BigComplex& z, BoundaryPolicy policy, double abs_error = 0.0) const;
};

RegionPredicate region_of(const FeasibleShape& shape);
bool shape_membership(const FeasibleShape& shape, const GaussianRational& z);
bool shape_membership(const FeasibleShape& shape, const BigComplex& z,
                      BoundaryPolicy policy = BoundaryPolicy::kStrict);

struct Transition {
  std::optional<FeasibleShape> shape;  // empty: the image has no interior
  bool degenerate = false;             // the closed image is a segment or point

  bool empty() const { return !shape.has_value(); }
};

// Shape of T[C_1(a) ∩ shape] up to boundary. Memoised per (shape, digit
// class); throws UnclassifiableShape for regions outside the catalogue and
// PreconditionViolation for digits outside I.
Transition digit_transition(const FeasibleShape& shape, const GaussianInt& a);
// Same computation without the memo table.
Transition digit_transition_direct(const FeasibleShape& shape, const GaussianInt& a);

// Digits with |a|^2 <= 8 are their own class; larger digits are classed by
// each component clamped to {<=-2, -1, 0, 1, >=2}, which is all the
// transition rule can see.
std::string digit_class(const GaussianInt& a);

// shape -> digit class -> shape (null for Empty), with degenerate markers.
nlohmann::ordered_json transition_table_json();

struct NormFilter {
  enum class Norm { kEuclid, kSup };
  Norm norm = Norm::kEuclid;
  // Euclid: lo_sq <= |a|^2 <= hi_sq. Sup: lo <= ||a|| <= hi (integers).
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  // ceil(L^2) <= |a|^2 <= floor(M^2); pass squared bounds directly when L^2
  // is an integer to avoid rounding.
  static NormFilter euclid(double L, double M);
  static NormFilter euclid_sq(std::int64_t lo_sq, std::int64_t hi_sq) {
    return {Norm::kEuclid, lo_sq, hi_sq};
  }
  static NormFilter sup(double lo, double hi);
};

// Digits in I passing the filter whose transition from `shape` is non-empty,
// in canonical digit order.
std::vector<GaussianInt> valid_digits(const FeasibleShape& shape, const NormFilter& filter);

bool admissible(std::span<const GaussianInt> digits);

struct CylinderNode {
  std::vector<GaussianInt> digits;
  QPair q_pair;
  FeasibleShape shape;
  double diam_lower = 0;  // gamma/|q_n|^2 (meaningful on E_sqrt8 only)
  double diam_upper = 0;  // 2/|q_n|^2
};

// Throws PreconditionViolation for non-admissible strings.
CylinderNode make_cylinder(std::span<const GaussianInt> digits);

struct DiameterBounds {
  double lower;
  double upper;
};
// Throws LowerBoundInapplicable when some digit has |a| < sqrt8.
DiameterBounds cylinder_diameter_bounds(const CylinderNode& node);

// Distance between [0; a_1..a_n, xi] and [0; a_1..a_n, -xi] from the Q-pair:
// 2|xi| / (|xi q_n + q_{n-1}| |xi q_n - q_{n-1}|).
double witness_distance(const GaussianInt& q_prev, const GaussianInt& q);

}  // namespace hurwitz
