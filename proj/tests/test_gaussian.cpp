#include <doctest.h>

#include <random>

#include "hurwitz/errors.hpp"
#include "hurwitz/gaussian.hpp"
#include "hurwitz/parse.hpp"

using namespace hurwitz;

namespace {

// floor(num/den) for den > 0 without going through floating point.
long floor_div(long num, long den) {
  long q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

// floor(x + 1/2) for x = k/10.
long round_tenths(long k) { return floor_div(2 * k + 10, 20); }

GaussianRational gr(long nr, long ni, long dr, long di) { return {GaussianInt(nr, ni), GaussianInt(dr, di)}; }

}  // namespace

TEST_CASE("nearest_gaussian examples") {
  CHECK(nearest_gaussian(GaussianRational(0)) == GaussianInt(0));
  CHECK(nearest_gaussian(GaussianRational::from_components(mpq_class(1, 2), mpq_class(1, 2))) == GaussianInt(1, 1));
  CHECK(nearest_gaussian(GaussianRational::from_components(mpq_class(-1, 2), mpq_class(-1, 2))) == GaussianInt(0, 0));

  const GaussianInt want(round_tenths(32), round_tenths(-47));
  CHECK(want == GaussianInt(3, -5));
  CHECK(nearest_gaussian(GaussianRational::from_components(mpq_class(32, 10), mpq_class(-47, 10))) == want);
  const Number n = parse_number("3.2-4.7i");
  REQUIRE(std::holds_alternative<BigComplex>(n));
  CHECK(nearest_gaussian(std::get<BigComplex>(n)) == want);
}

TEST_CASE("nearest_gaussian agrees with integer floor on a tenths grid") {
  for (long a = -60; a <= 60; ++a) {
    for (long b = -60; b <= 60; b += 7) {
      const auto z = GaussianRational::from_components(mpq_class(a, 10), mpq_class(b, 10));
      CHECK(nearest_gaussian(z) == GaussianInt(round_tenths(a), round_tenths(b)));
    }
  }
}

TEST_CASE("float rounding near a half-integer") {
  const BigComplex tie(0.5, 0.0, 128);
  CHECK_THROWS_AS(nearest_gaussian(tie), AmbiguousRounding);
  CHECK(nearest_gaussian(tie, BoundaryPolicy::kLenient) == GaussianInt(1, 0));
  CHECK(nearest_gaussian(BigComplex(0.4, -0.6, 128)) == GaussianInt(0, -1));
}

TEST_CASE("norms") {
  const Norms a = norms(GaussianInt(3, 4));
  CHECK(a.abs == 5.0);
  CHECK(a.sup == 4.0);
  const Norms b = norms(GaussianInt(1, 1));
  CHECK(b.abs == doctest::Approx(std::sqrt(2.0)));
  CHECK(b.sup == 1.0);
  const Norms c = norms(GaussianInt(0));
  CHECK(c.abs == 0.0);
  CHECK(c.sup == 0.0);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int k = 0; k < 1000; ++k) {
    const Norms n = norms(gr(d(rng), d(rng), d(rng) | 1, d(rng)));
    CHECK(n.sup <= n.abs * (1 + 1e-15));
    CHECK(n.abs <= std::sqrt(2.0) * n.sup * (1 + 1e-15));
  }
}

TEST_CASE("fundamental domain is half-open") {
  CHECK(in_fundamental_domain(GaussianRational(0)));
  CHECK(in_fundamental_domain(GaussianRational::from_components(mpq_class(-1, 2), mpq_class(-1, 2))));
  CHECK_FALSE(in_fundamental_domain(GaussianRational::from_components(mpq_class(1, 2), 0)));
  CHECK_FALSE(in_fundamental_domain(GaussianRational::from_components(0, mpq_class(1, 2))));
  CHECK(in_fundamental_domain(GaussianRational::from_components(mpq_class(49, 100), mpq_class(49, 100))));
  CHECK(in_fundamental_domain(BigComplex(0.49, 0.49, 128)));
  CHECK_THROWS_AS(in_fundamental_domain(BigComplex(0.5, 0.0, 128)), AmbiguousRounding);
}

TEST_CASE("divmod and gcd") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-5000, 5000);
  for (int k = 0; k < 2000; ++k) {
    const GaussianInt a(d(rng), d(rng));
    GaussianInt b(d(rng), d(rng));
    if (b.is_zero()) b = GaussianInt(1);
    const auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(2 * r.norm() <= b.norm());

    const GaussianInt g = gcd(a, b);
    if (!g.is_zero()) {
      CHECK(divmod(a, g).second.is_zero());
      CHECK(divmod(b, g).second.is_zero());
    }
  }
  CHECK_THROWS_AS(divmod(GaussianInt(1), GaussianInt(0)), DivisionByZero);
}

TEST_CASE("canonical form of Gaussian rationals") {
  const GaussianRational a = gr(3, -4, 25, 0);
  CHECK(a == GaussianRational(GaussianInt(1), GaussianInt(3, 4)));
  CHECK(a == GaussianRational(GaussianInt(4, 3), GaussianInt(0, 25)));
  CHECK(a.reciprocal() == GaussianRational(GaussianInt(3, 4)));
  CHECK(a.reciprocal().is_gaussian_int());
  CHECK_THROWS_AS(gr(1, 0, 0, 0), DivisionByZero);

  // Multiplying numerator and denominator by any unit or common factor does
  // not change the stored representation.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-300, 300);
  const GaussianInt units[] = {GaussianInt(1), GaussianInt(0, 1), GaussianInt(-1), GaussianInt(0, -1)};
  for (int k = 0; k < 500; ++k) {
    const GaussianInt n(d(rng), d(rng));
    GaussianInt m(d(rng), d(rng));
    if (m.is_zero()) m = GaussianInt(2, 1);
    const GaussianInt f(d(rng) | 1, d(rng));
    const GaussianRational base(n, m);
    const GaussianRational scaled(n * f * units[k % 4], m * f);
    CHECK(scaled * GaussianRational(units[k % 4]).reciprocal() == base);
    CHECK(GaussianRational(n * f, m * f) == base);
    const GaussianInt g = gcd(base.num(), base.den());
    CHECK(g.norm() == 1);
    CHECK(normalize_associate(base.den()) == base.den());
  }
}

TEST_CASE("field identities") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(-50, 50);
  auto draw = [&] {
    GaussianInt den(d(rng), d(rng));
    if (den.is_zero()) den = GaussianInt(1, 1);
    return GaussianRational(GaussianInt(d(rng), d(rng)), den);
  };
  for (int k = 0; k < 500; ++k) {
    const auto x = draw();
    const auto y = draw();
    const auto z = draw();
    CHECK((x + y) - y == x);
    CHECK(x * (y + z) == x * y + x * z);
    if (!y.is_zero()) CHECK((x / y) * y == x);
    CHECK((x * y).norm() == x.norm() * y.norm());
    CHECK(x.conj().conj() == x);
  }
}

TEST_CASE("literal parsing") {
  auto exact = [](const char* s) { return std::get<GaussianRational>(parse_number(s)); };
  CHECK(exact("(3-4i)/25") == gr(3, -4, 25, 0));
  CHECK(exact("(3-4i)/(25)") == gr(3, -4, 25, 0));
  CHECK(exact("1/2-1/3i") == GaussianRational::from_components(mpq_class(1, 2), mpq_class(-1, 3)));
  CHECK(exact("-i") == GaussianRational(GaussianInt(0, -1)));
  CHECK(exact("0") == GaussianRational(0));
  CHECK(exact("(1)/(2+2i)") == gr(1, -1, 4, 0));
  CHECK(std::holds_alternative<BigComplex>(parse_number("0.3+0.3i")));
  CHECK_THROWS_AS(parse_number("3+"), ParseError);
  CHECK_THROWS_AS(parse_number("(3-4i)/0"), ParseError);
  CHECK_THROWS_AS(parse_number("1+2i+3i"), ParseError);
  CHECK_THROWS_AS(parse_number("abc"), ParseError);
}
