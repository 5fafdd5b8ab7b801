#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "hurwitz/constants.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/geometry.hpp"
#include "hurwitz/hcf.hpp"

using namespace hurwitz;

namespace {

struct C {
  long re, im;
};

// Excluded disk centres written out from the definitions of F_1..F_4, then
// rotated by i^j.
std::vector<C> centres_of(int j, int k) {
  std::vector<C> c;
  if (k == 1) c = {{-1, 0}, {0, -1}};
  if (k == 2) c = {{-1, 0}};
  if (k == 3) c = {{-1, -1}};
  for (auto& p : c) {
    for (int r = 0; r < j; ++r) p = {-p.im, p.re};
  }
  return c;
}

// Is num/den in the open box minus the closed unit disks? Integer only.
bool inside(std::int64_t nr, std::int64_t ni, std::int64_t dr, std::int64_t di, const std::vector<C>& cs) {
  // num/den = num conj(den) / |den|^2
  const std::int64_t D = dr * dr + di * di;
  const std::int64_t wr = nr * dr + ni * di;
  const std::int64_t wi = ni * dr - nr * di;
  if (!(2 * std::abs(wr) < D && 2 * std::abs(wi) < D)) return false;
  for (const auto& c : cs) {
    const std::int64_t xr = wr - c.re * D;
    const std::int64_t xi = wi - c.im * D;
    if (!(xr * xr + xi * xi > D * D)) return false;
  }
  return true;
}

constexpr std::int64_t kGrid = 64;  // sample points (u + iv)/64 with u, v odd

}  // namespace

TEST_CASE("catalogue has thirteen distinct shapes") {
  const auto& cat = FeasibleShape::catalogue();
  std::set<std::string> names;
  for (const auto& s : cat) {
    names.insert(s.name());
    CHECK(cat[static_cast<std::size_t>(s.index())] == s);
    const auto want = centres_of(s.rotation, s.base);
    const auto got = s.centres();
    CHECK(got.size() == want.size());
  }
  CHECK(names.size() == 13);
}

TEST_CASE("shape membership examples") {
  CHECK(shape_membership(FeasibleShape{0, 4}, GaussianRational(0)));
  CHECK_FALSE(shape_membership(FeasibleShape{0, 2}, GaussianRational::from_components(mpq_class(-2, 5), 0)));
  CHECK(shape_membership(FeasibleShape{0, 1}, GaussianRational::from_components(mpq_class(2, 5), mpq_class(2, 5))));
  CHECK(shape_membership(FeasibleShape{0, 1}, BigComplex(0.4, 0.4, 128)));
  CHECK_FALSE(shape_membership(FeasibleShape{0, 4}, GaussianRational::from_components(mpq_class(-1, 2), 0)));
}

TEST_CASE("shape membership matches the disk inequalities") {
  for (const auto& s : FeasibleShape::catalogue()) {
    const auto cs = centres_of(s.rotation, s.base);
    for (std::int64_t u = -kGrid + 1; u < kGrid; u += 6) {
      for (std::int64_t v = -kGrid + 1; v < kGrid; v += 6) {
        const auto z = GaussianRational::from_components(mpq_class(u, 2 * kGrid), mpq_class(v, 2 * kGrid));
        CHECK(shape_membership(s, z) == inside(u, v, 2 * kGrid, 0, cs));
      }
    }
  }
}

TEST_CASE("digit transition examples") {
  const Transition t = digit_transition(FeasibleShape::full(), GaussianInt(-2));
  REQUIRE_FALSE(t.empty());
  CHECK(*t.shape == FeasibleShape{2, 2});
  CHECK(t.shape->centres() == std::vector<Centre>{{1, 0}});

  for (long r = -6; r <= 6; ++r) {
    for (long i = -6; i <= 6; ++i) {
      const GaussianInt a(r, i);
      if (a.norm() < 8 || a.norm() > 36) continue;
      const Transition ta = digit_transition(FeasibleShape::full(), a);
      REQUIRE_FALSE(ta.empty());
      CHECK(*ta.shape == FeasibleShape::full());
    }
  }
  CHECK_THROWS_AS(digit_transition(FeasibleShape::full(), GaussianInt(1)), PreconditionViolation);
}

TEST_CASE("digit transitions agree with a sampling oracle") {
  // y is in T[C_1(a) ∩ S] iff 1/(a + y) lies in S.
  for (const auto& s : FeasibleShape::catalogue()) {
    const auto src = centres_of(s.rotation, s.base);
    for (long r = -4; r <= 4; ++r) {
      for (long i = -4; i <= 4; ++i) {
        const GaussianInt a(r, i);
        if (a.norm() < 2) continue;
        const Transition t = digit_transition(s, a);
        CHECK(digit_transition_direct(s, a).shape == t.shape);
        const auto dst = t.empty() ? std::vector<C>{} : centres_of(t.shape->rotation, t.shape->base);
        long mismatches = 0;
        for (std::int64_t u = -kGrid + 1; u < kGrid; u += 2) {
          for (std::int64_t v = -kGrid + 1; v < kGrid; v += 2) {
            // 1/(a + y) = 2*64 / (2*64 a + u + iv)
            const bool truth = inside(2 * kGrid, 0, 2 * kGrid * r + u, 2 * kGrid * i + v, src);
            const bool claim = !t.empty() && inside(u, v, 2 * kGrid, 0, dst);
            if (truth != claim) ++mismatches;
          }
        }
        CHECK_MESSAGE(mismatches == 0, s.name() << " by " << a.to_string());
      }
    }
  }
}

TEST_CASE("digit classes") {
  CHECK(digit_class(GaussianInt(7, 3)) == digit_class(GaussianInt(9, 2)));
  CHECK(digit_class(GaussianInt(2)) != digit_class(GaussianInt(-2)));
  CHECK(digit_class(GaussianInt(1, 1)) != digit_class(GaussianInt(1, -1)));
}

TEST_CASE("valid digits") {
  const auto d35 = valid_digits(FeasibleShape::full(), NormFilter::euclid(3, 5));
  std::size_t brute = 0;
  for (long r = -5; r <= 5; ++r) {
    for (long i = -5; i <= 5; ++i) brute += (r * r + i * i >= 9 && r * r + i * i <= 25) ? 1 : 0;
  }
  // 81 points have norm <= 25 and 25 have norm <= 8.
  CHECK(brute == 56);
  CHECK(d35.size() == brute);

  CHECK(valid_digits(FeasibleShape::full(), NormFilter::sup(3, 3)).size() == 24);

  const auto big = valid_digits(FeasibleShape::full(), NormFilter::euclid(3, 50));
  CHECK(big.size() >= 2500);

  // From F4 every digit with |a| >= sqrt8 survives. From F2 = F \ D(-1) the
  // image of 1/z has Re > -1/2, so digits with Re a <= -1 drop out.
  const auto all = valid_digits(FeasibleShape::full(), NormFilter::euclid_sq(8, 50));
  std::size_t lattice = 0;
  for (long r = -7; r <= 7; ++r) {
    for (long i = -7; i <= 7; ++i) lattice += (r * r + i * i >= 8 && r * r + i * i <= 50) ? 1 : 0;
  }
  CHECK(all.size() == lattice);
  for (const auto& a : valid_digits(FeasibleShape{0, 2}, NormFilter::euclid_sq(8, 50))) CHECK(a.re >= 0);

  // Small digits lose some shapes.
  const auto small = valid_digits(FeasibleShape{0, 1}, NormFilter::euclid_sq(2, 8));
  CHECK(small.size() < valid_digits(FeasibleShape::full(), NormFilter::euclid_sq(2, 8)).size());
}

TEST_CASE("admissibility") {
  const std::vector<GaussianInt> big{GaussianInt(3), GaussianInt(0, 3), GaussianInt(-3)};
  CHECK(admissible(big));
  for (long r = -3; r <= 3; ++r) {
    for (long i = -3; i <= 3; ++i) {
      const GaussianInt a(r, i);
      if (a.norm() < 2) continue;
      const std::vector<GaussianInt> one{a};
      CHECK(admissible(one));
    }
  }

  // (-2, b): search for a point z = 1/(-2 + 1/(b + y)) in F with both
  // intermediate points in the open box.
  constexpr std::int64_t g = 256;
  for (long r = -3; r <= 3; ++r) {
    for (long i = -3; i <= 3; ++i) {
      const GaussianInt b(r, i);
      if (b.norm() < 2) continue;
      bool found = false;
      for (std::int64_t u = -g + 1; u < g && !found; u += 2) {
        for (std::int64_t v = -g + 1; v < g && !found; v += 2) {
          // w = b + y = N / (2g), N = 2g b + u + iv; z2 = 2g / N; z = N / (-2N + 2g).
          const std::int64_t nr = 2 * g * r + u;
          const std::int64_t ni = 2 * g * i + v;
          found = inside(2 * g, 0, nr, ni, {}) && inside(nr, ni, -2 * nr + 2 * g, -2 * ni, {});
        }
      }
      const std::vector<GaussianInt> two{GaussianInt(-2), b};
      CHECK_MESSAGE(admissible(two) == found, b.to_string());
    }
  }
}

TEST_CASE("cylinder diameter bounds") {
  const double gamma = constants().gamma;
  const std::vector<GaussianInt> one{GaussianInt(3, 4)};
  const CylinderNode n1 = make_cylinder(one);
  const DiameterBounds b = cylinder_diameter_bounds(n1);
  CHECK(b.lower == doctest::Approx(gamma / 25).epsilon(1e-15));
  CHECK(b.upper == doctest::Approx(2.0 / 25).epsilon(1e-15));

  const std::vector<GaussianInt> small{GaussianInt(1, 1)};
  CHECK_THROWS_AS(cylinder_diameter_bounds(make_cylinder(small)), LowerBoundInapplicable);

  // Witness points [0; a, +-xi] evaluated directly.
  const auto& k = constants();
  const BigComplex inv = k.xi.reciprocal();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> d(-7, 7);
  for (int t = 0; t < 100; ++t) {
    std::vector<GaussianInt> a;
    double prev_upper = 2.0;
    const int n = 1 + t % 8;
    while (static_cast<int>(a.size()) < n) {
      const GaussianInt x(d(rng), d(rng));
      if (x.norm() < 8) continue;
      a.push_back(x);
      const CylinderNode node = make_cylinder(a);
      CHECK(node.diam_upper < prev_upper);
      prev_upper = node.diam_upper;
    }
    const CylinderNode node = make_cylinder(a);
    const double direct = (moebius_v(a, inv) - moebius_v(a, -inv)).abs().to_double();
    const double w = witness_distance(node.q_pair.q_prev, node.q_pair.q);
    CHECK(w == doctest::Approx(direct).epsilon(1e-12));
    CHECK(direct >= node.diam_lower * (1 - 1e-12));
    CHECK(direct <= node.diam_upper);
  }
}

TEST_CASE("separation constants") {
  const SeparationConstants c = derive_constants(256);
  // Independent root from the quadratic formula in long double.
  const std::complex<long double> b(3, 4);
  std::complex<long double> r = (b + std::sqrt(b * b + 4.0L)) / 2.0L;
  if (std::abs(r) < 1) r = (b - std::sqrt(b * b + 4.0L)) / 2.0L;
  CHECK(c.abs_xi_d == doctest::Approx(static_cast<double>(std::abs(r))).epsilon(1e-15));
  CHECK(c.xi.re().to_double() == doctest::Approx(static_cast<double>(r.real())).epsilon(1e-15));
  CHECK(c.xi.im().to_double() == doctest::Approx(static_cast<double>(r.imag())).epsilon(1e-15));
  CHECK(c.solver_gap <= 1e-30);

  // Residual of xi^2 - (3+4i) xi - 1 at full precision.
  const BigComplex res = c.xi * c.xi - BigComplex(3, 4, 256) * c.xi - BigComplex(1, 0, 256);
  CHECK(res.abs().to_double() < 1e-70);

  const double t = static_cast<double>(std::abs(r));
  CHECK(c.gamma == doctest::Approx(2 * t / ((t + 1) * (t + 1))).epsilon(1e-14));
  CHECK(c.gamma > 0);
  CHECK(c.gamma <= 0.5);
  const double k = 1 - 2 / (std::sqrt(8.0) - 1 / std::sqrt(2.0));
  CHECK(c.k_sep == doctest::Approx(k).epsilon(1e-14));
  CHECK(c.k_sep > 0.05);
}
