#pragma once

// Lattice points of Z[i] in annuli, and certified bounds for power sums over
// the lattice.

#include <cstdint>
#include <vector>

namespace hurwitz {

struct LatticePoint {
  std::int64_t re;
  std::int64_t im;
  std::int64_t norm;  // re^2 + im^2
};

// Canonical digit order: by norm, then re, then im.
bool digit_order(const LatticePoint& a, const LatticePoint& b);

// min_norm <= |b|^2 <= max_norm.
std::vector<LatticePoint> enumerate_annulus(std::int64_t min_norm, std::int64_t max_norm);
// lo <= max(|re|,|im|) <= hi.
std::vector<LatticePoint> enumerate_sup_annulus(std::int64_t lo, std::int64_t hi);
// The first `count` points with |b|^2 >= min_norm in digit order, extended so
// the last norm shell is complete.
std::vector<LatticePoint> smallest_points(std::int64_t min_norm, std::size_t count);

// #{b : r <= |b| < r+1} <= pi (1+sqrt2)(2r+1) for r >= 1 (unit squares around
// the points fit inside the widened annulus).
double annulus_count_bound(double r);

// Upper bound for sum over |b| >= R of (|b| - delta)^(-t); needs t > 2,
// R >= 2 and 0 <= delta <= R - 1.
double tail_power_bound(double R, double delta, double t);

// c_T(eps) with sum_{|b| >= L} |b|^(-(2+2eps)) <= c_T L^(-2eps) for L >= 2.
double lattice_tail_constant(double eps);

}  // namespace hurwitz
