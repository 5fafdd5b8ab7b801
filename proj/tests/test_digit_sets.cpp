#include <doctest.h>

#include <mpfr.h>

#include <cmath>
#include <complex>
#include <vector>

#include "hurwitz/constants.hpp"
#include "hurwitz/digit_sets.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/lattice.hpp"

using namespace hurwitz;

namespace {

CheckOptions opts(int depth, SumPolicy p = SumPolicy::kExhaustive) {
  CheckOptions o;
  o.depth = depth;
  o.policy = p;
  o.threads = 1;
  return o;
}

long count_annulus(long lo_sq, long hi_sq) {
  long n = 0;
  const long r = static_cast<long>(std::sqrt(static_cast<double>(hi_sq))) + 1;
  for (long a = -r; a <= r; ++a) {
    for (long b = -r; b <= r; ++b) n += (a * a + b * b >= lo_sq && a * a + b * b <= hi_sq) ? 1 : 0;
  }
  return n;
}

double margin(const CheckResult& r, const std::string& name) {
  for (const auto& c : std::get<DimensionCertificate>(r).conditions) {
    if (c.name == name) return c.margin;
  }
  return std::nan("");
}

// s(M) in MPFR from the displayed formula.
double closed_form_mpfr(double M, const BigFloat& gamma) {
  const mpfr_prec_t p = 256;
  BigFloat m(M, p), two(2.0, p), one(1.0, p);
  const BigFloat lm = log(m);
  const BigFloat num = two * lm;
  const BigFloat den = two * lm + two * log(one + one / m) - log(gamma / two);
  return (num / den).to_double();
}

}  // namespace

TEST_CASE("filters and family construction") {
  const HcfTreeFamily f = build_family(DigitFilter::annulus(3, 4));
  CHECK(static_cast<long>(f.level_size(1)) == count_annulus(9, 16));
  CHECK(f.level_size(2) == f.level_size(1));
  CHECK(f.finite_descendants());
  CHECK(f.scale() == 0.5);
  std::vector<HcfTreeFamily::Node> kids;
  f.descendants(f.root(), kids);
  CHECK(kids.size() == f.level_size(1));
  CHECK(f.bounds(f.root()).upper <= 1.0);

  CHECK_THROWS_AS(build_family(DigitFilter::annulus(2, 6)), FilterTooWeak);
  CHECK_NOTHROW(build_family(DigitFilter::annulus_sq(8, 36)));

  const HcfTreeFamily lower = build_family(DigitFilter::lower(10, 64));
  CHECK_FALSE(lower.finite_descendants());
  CHECK(lower.level_size(1) >= 64);
  CHECK(lower.tail_bound(lower.root(), 1.5).has_value());
  // The lattice sum of |b|^(-2s) diverges for s <= 1.
  CHECK(std::isinf(*lower.tail_bound(lower.root(), 0.9)));
  CHECK_FALSE(lower.separation(1).has_value());

  Schedule weak = linear_schedule();
  weak.f = [](long) { return 2.0; };
  CHECK_THROWS_AS(build_family(DigitFilter::sup_schedule(weak)), FilterTooWeak);
}

TEST_CASE("schedule family levels") {
  const HcfTreeFamily f = build_family(DigitFilter::sup_schedule(linear_schedule()));
  // f(1) = 4 <= ||a|| <= g(1) = 40
  CHECK(f.level_size(1) == 81u * 81u - 7u * 7u);
  CHECK(f.level_size(2) == 101u * 101u - 9u * 9u);
  double prev = 1.0;
  for (int n = 1; n <= 20; ++n) {
    const double b = *f.separation(n);
    CHECK(b > 0);
    CHECK(b < prev);
    prev = b;
  }
  const auto info = f.info_json();
  CHECK(info.contains("c3"));
}

TEST_CASE("descendant sums against direct loops") {
  const double gamma = constants().gamma;
  const HcfTreeFamily f = build_family(DigitFilter::annulus(3, 7));
  std::vector<HcfTreeFamily::Node> kids, grand;
  f.descendants(f.root(), kids);
  for (std::size_t i = 0; i < kids.size(); i += 5) {
    const auto& n = kids[i];
    f.descendants(n, grand);
    for (double s : {0.5, 0.7, 1.2}) {
      double lo = 0, hi = 0;
      for (const auto& g : grand) {
        const double norm = static_cast<double>(g.q_re) * static_cast<double>(g.q_re) +
                            static_cast<double>(g.q_im) * static_cast<double>(g.q_im);
        lo += std::pow(0.5 * gamma / norm, s);
        hi += std::pow(0.5 * 2.0 / norm, s);
      }
      const DescendantSum a = f.descendant_sum(n, s, SumKind::kLower, INFINITY);
      const DescendantSum b = f.descendant_sum(n, s, SumKind::kUpper, INFINITY);
      CHECK(a.sum == doctest::Approx(lo).epsilon(1e-12));
      CHECK(b.sum == doctest::Approx(hi).epsilon(1e-12));
      CHECK(a.complete);
      CHECK(a.count == grand.size());
    }
  }
}

TEST_CASE("sandwich bounds of family nodes") {
  const double gamma = constants().gamma;
  const HcfTreeFamily f = build_family(DigitFilter::annulus(3, 5));
  const HcfTreeFamily w = build_family(DigitFilter::annulus(3, 5), DiameterChoice::kWitness);
  std::vector<HcfTreeFamily::Node> kids;
  f.descendants(f.root(), kids);
  for (const auto& k : kids) {
    const Bounds b = f.bounds(k);
    const double norm = static_cast<double>(k.q_re * k.q_re + k.q_im * k.q_im);
    CHECK(b.lower == doctest::Approx(0.5 * gamma / norm));
    CHECK(b.upper == doctest::Approx(1.0 / norm));
    // Witness diameters (scale 1) sit inside the unscaled sandwich.
    const Bounds bw = w.bounds(k);
    CHECK(bw.lower >= gamma / norm * (1 - 1e-12));
    CHECK(bw.upper <= 2.0 / norm);
  }
}

TEST_CASE("closed-form lower exponent") {
  const double gamma = constants().gamma;
  double prev = 0;
  for (double M : {1e3, 1e6, 1e9}) {
    const double s = lower_exponent_closed_form(M, gamma);
    CHECK(s > prev);
    CHECK(s < 1.0);
    prev = s;
  }
  CHECK(1.0 - prev < 0.1);
  const double s4 = lower_exponent_closed_form(1e4, gamma);
  CHECK(std::abs(s4 - closed_form_mpfr(1e4, constants().gamma_big)) < 1e-12);
  CHECK(s4 > 0.89);
  CHECK(s4 < 0.91);
  const double M = 50;
  CHECK(lower_exponent_closed_form(M, 2.0) ==
        doctest::Approx(2 * std::log(M) / (2 * std::log(M) + 2 * std::log1p(1 / M))).epsilon(1e-15));
  CHECK(lower_exponent_closed_form(M, 2.0) < 1.0);
}

TEST_CASE("small instances pass at the closed form") {
  const double gamma = constants().gamma;
  for (double M : {6.0, 10.0, 20.0}) {
    const HcfTreeFamily f = build_family(DigitFilter::annulus(3, M));
    const double s = lower_exponent_closed_form(M, gamma) - 1e-6;
    const int depth = M < 20 ? 3 : 2;
    const CheckResult r = check_lower_conditions(f, s, opts(depth, SumPolicy::kEarlyExit));
    REQUIRE_MESSAGE(passed(r), "M = " << M);
    CHECK(margin(r, "descendant_sum") > 0);
    CHECK(margin(r, "sibling_separation") > 0);
    // The count requirement #{3 <= |b| <= M} >= M^2.
    CHECK(count_annulus(9, static_cast<long>(M * M)) >= static_cast<long>(M * M));
  }
}

TEST_CASE("E_3^6 bracket contains the one-step crossing") {
  const HcfTreeFamily f = build_family(DigitFilter::annulus(3, 6), DiameterChoice::kWitness);
  const ExponentBracket b = critical_exponent(f, 1e-3, opts(3, SumPolicy::kExhaustive));

  // Root: q_prev = 0, q = 1. Children: q_prev = 1, q = b.
  const auto& c = constants();
  const std::complex<double> xi(c.xi.re().to_double(), c.xi.im().to_double());
  auto wit = [&](std::complex<double> qp, std::complex<double> q) {
    return 2 * std::abs(xi) / (std::abs(xi * q + qp) * std::abs(xi * q - qp));
  };
  std::vector<double> kids;
  for (int r = -6; r <= 6; ++r) {
    for (int i = -6; i <= 6; ++i) {
      if (r * r + i * i >= 9 && r * r + i * i <= 36) kids.push_back(wit(1.0, {double(r), double(i)}));
    }
  }
  const double root = wit(0.0, 1.0);
  auto excess = [&](double s) {
    double sum = 0;
    for (double k : kids) sum += std::pow(k, s);
    return sum - std::pow(root, s);
  };
  double lo = 0.5, hi = 2.0;
  REQUIRE(excess(lo) > 0);
  REQUIRE(excess(hi) < 0);
  for (int it = 0; it < 100; ++it) {
    const double m = 0.5 * (lo + hi);
    (excess(m) > 0 ? lo : hi) = m;
  }
  CHECK(b.s_low <= lo);
  CHECK(lo <= b.s_high);
}

TEST_CASE("upper threshold") {
  const double gamma = constants().gamma;
  double prev = INFINITY;
  for (int k = 1; k <= 9; ++k) {
    const UpperThreshold u = upper_exponent_threshold(k / 10.0, gamma);
    CHECK(u.L_min > 2.0);
    CHECK(u.c2 * std::pow(u.L_min, -2 * u.epsilon) <= 1.0);
    CHECK(u.L_min <= prev);
    prev = u.L_min;
  }
  const UpperThreshold h = upper_exponent_threshold(0.5, gamma);
  CHECK(h.c2 == doctest::Approx(std::pow(2.0, 4.5) * h.c_T / std::pow(gamma, 1.5)));
  CHECK(h.c_T == doctest::Approx(lattice_tail_constant(0.5)));
}

TEST_CASE("tail constant against direct summation") {
  const std::vector<double> Ls{3, 10, 30, 100};
  for (const auto& r : tail_constant_check(0.5, Ls, 300)) {
    double direct = 0;
    const long lo = static_cast<long>(std::ceil(r.L * r.L));
    for (long a = -300; a <= 300; ++a) {
      for (long b = -300; b <= 300; ++b) {
        const long n = a * a + b * b;
        if (n >= lo && n <= 300 * 300) direct += std::pow(static_cast<double>(n), -1.5);
      }
    }
    CHECK(r.direct == doctest::Approx(direct).epsilon(1e-11));
    CHECK(r.margin > 0);
    CHECK(r.direct + r.remainder <= r.bound);
  }
}

TEST_CASE("schedule condition") {
  const double gamma = constants().gamma;
  const Schedule sch = linear_schedule();
  const ScheduleScan scan = schedule_scan(sch, 0.9, 10000, gamma);
  REQUIRE(scan.N.has_value());
  CHECK(*scan.N <= 100);
  CHECK(scan.ratio_increasing);
  CHECK(scan.rows.back().ratio < 1.0);
  for (long n = *scan.N; n <= 10000; n += 97) CHECK(schedule_condition(sch, 0.9, n, gamma).satisfied);

  // Independent evaluation of one row.
  const ScheduleEvaluation e = schedule_condition(sch, 0.9, 200, gamma);
  const double f = 204, g = 2040, c5 = 3 * std::pow(2.0, -0.9);
  const double ratio = (2 * std::log(g) + std::log(1 - f * f / (g * g)) + std::log(c5)) /
                       (2 * std::log(g) + 2 * std::log(1 + 1 / g) - std::log(gamma / 2));
  CHECK(e.ratio == doctest::Approx(ratio).epsilon(1e-14));
  CHECK(e.applicable);

  // At s = 1 the ratio stays below 1 over the scanned range.
  const ScheduleScan one = schedule_scan(sch, 1.0, 10000, gamma);
  CHECK_FALSE(one.N.has_value());

  // The linear schedule already has f = c' g. A wider ratio f/g = 1/2 only
  // shifts the constant log term; the ratio still climbs toward 1.
  Schedule half = sch;
  half.f = [](long n) { return 5.0 * (static_cast<double>(n) + 3.0); };
  half.c_prime = 0.5;
  const ScheduleScan hs = schedule_scan(half, 0.9, 10000, gamma);
  CHECK(hs.ratio_increasing);
  CHECK(hs.rows.back().ratio > 0.9);
  Schedule loose = sch;
  loose.c_prime = 0.05;
  CHECK_FALSE(schedule_condition(loose, 0.9, 500, gamma).applicable);
}

TEST_CASE("prefixed families are bi-Lipschitz images") {
  const double s = lower_exponent_closed_form(6, constants().gamma);
  for (auto prefix : {std::vector<GaussianInt>{GaussianInt(-2)}, std::vector<GaussianInt>{GaussianInt(1, 1), GaussianInt(4)},
                      std::vector<GaussianInt>{GaussianInt(3, 4)}}) {
    const PrefixedCheck c = prefixed_lambda_check(prefix, DigitFilter::annulus_sq(9, 36), s, 2);
    CHECK(c.passed);
    CHECK(c.lo <= c.hi);
    for (const auto& st : c.stages) {
      CHECK(st.within);
      CHECK(st.ratio == doctest::Approx(st.lambda_image / st.lambda_base));
    }
  }
}

TEST_CASE("upper certificate for E_L via the analytic tail") {
  const UpperThreshold u = upper_exponent_threshold(0.5, constants().gamma);
  const HcfTreeFamily f = build_family(DigitFilter::lower(u.L_min, 64));
  const CheckResult r = check_upper_conditions(f, 1.5, opts(2));
  REQUIRE(passed(r));
  CHECK(margin(r, "descendant_sum") > 0);
  // Without enough room below the threshold the check fails.
  const HcfTreeFamily g = build_family(DigitFilter::lower(3, 64));
  CHECK_FALSE(passed(check_upper_conditions(g, 1.5, opts(2))));
}
