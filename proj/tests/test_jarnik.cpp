#include <doctest.h>

#include <cmath>
#include <vector>

#include "hurwitz/cantor.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/jarnik.hpp"

using namespace hurwitz;

namespace {

const double kLog23 = std::log(2.0) / std::log(3.0);

CheckOptions opts(int depth, unsigned threads = 1) {
  CheckOptions o;
  o.depth = depth;
  o.threads = threads;
  return o;
}

double margin(const CheckResult& r, const std::string& name) {
  for (const auto& c : std::get<DimensionCertificate>(r).conditions) {
    if (c.name == name) return c.margin;
  }
  FAIL("no condition " << name);
  return 0;
}

// Cantor intervals with children listed right to left.
struct ReversedCantor : MiddleThirdCantor {
  void descendants(const Node& n, std::vector<Node>& out) const {
    MiddleThirdCantor::descendants(n, out);
    std::swap(out[0], out[1]);
  }
};

// Claims infinitely many descendants but offers no tail bound.
struct OpenCantor : MiddleThirdCantor {
  bool finite_descendants() const { return false; }
};

// Nine children of diameter 1/3 each: the unit square split in a 3x3 grid.
struct Grid {
  struct Node {
    int depth;
  };
  Node root() const { return {0}; }
  int depth(const Node& n) const { return n.depth; }
  Bounds bounds(const Node& n) const { return {std::pow(3.0, -n.depth), std::pow(3.0, -n.depth)}; }
  void descendants(const Node& n, std::vector<Node>& out) const { out.assign(9, {n.depth + 1}); }
  std::optional<double> separation(int) const { return 0.0; }
  double sibling_gap(const Node&) const { return 0.0; }
  std::string describe(const Node& n) const { return "grid " + std::to_string(n.depth); }
  bool finite_descendants() const { return true; }
  double ambient_dimension() const { return 2.0; }
  std::string name() const { return "grid"; }
};

}  // namespace

TEST_CASE("lambda_sum") {
  const std::vector<double> two{1.0 / 3, 1.0 / 3};
  CHECK(lambda_sum(two, 1.0) == doctest::Approx(2.0 / 3));
  for (int n = 1; n <= 10; ++n) {
    const std::vector<double> stage(static_cast<std::size_t>(1) << n, std::pow(3.0, -n));
    CHECK(lambda_sum(stage, kLog23) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lambda_sum(std::vector<double>{}, 1.0), PreconditionViolation);
}

TEST_CASE("cantor lower check follows 2*3^-s") {
  const MiddleThirdCantor c;
  const CheckResult ok = check_lower_conditions(c, 0.6, opts(8));
  REQUIRE(passed(ok));
  CHECK(margin(ok, "descendant_sum") == doctest::Approx(2 * std::pow(3.0, -0.6) - 1).epsilon(1e-12));
  CHECK(margin(ok, "sibling_separation") == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(margin(ok, "stage_diameter_decay") == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(std::get<DimensionCertificate>(ok).nodes_checked == 255);

  const CheckResult bad = check_lower_conditions(c, 0.65, opts(8));
  REQUIRE_FALSE(passed(bad));
  const auto& f = std::get<CheckFailure>(bad);
  CHECK(f.condition == "descendant_sum");
  CHECK(f.margin == doctest::Approx(2 * std::pow(3.0, -0.65) - 1).epsilon(1e-12));
  CHECK(f.node_depth == 0);
}

TEST_CASE("cantor upper check and Lambda monotonicity") {
  const MiddleThirdCantor c;
  const CheckResult ok = check_upper_conditions(c, 0.7, opts(8));
  REQUIRE(passed(ok));
  CHECK(margin(ok, "descendant_sum") == doctest::Approx(1 - 2 * std::pow(3.0, -0.7)).epsilon(1e-12));
  const auto& cert = std::get<DimensionCertificate>(ok);
  for (int n = 0; n <= 8; ++n) {
    REQUIRE(cert.stages[static_cast<std::size_t>(n)].lambda);
    CHECK(*cert.stages[static_cast<std::size_t>(n)].lambda == doctest::Approx(std::pow(2 * std::pow(3.0, -0.7), n)));
  }
  CHECK_FALSE(passed(check_upper_conditions(c, 0.6, opts(8))));

  const std::string csv = lambda_csv(cert);
  CHECK(csv.rfind("depth,lambda", 0) == 0);
}

TEST_CASE("critical exponent equality case") {
  const MiddleThirdCantor c;
  CHECK(passed(check_lower_conditions(c, kLog23, opts(6))));
  CHECK(passed(check_upper_conditions(c, kLog23, opts(6))));

  // The 3x3 grid is self-similar with dimension exactly 2.
  const Grid g;
  CHECK(passed(check_upper_conditions(g, 2.0, opts(3))));
  const CheckResult low = check_upper_conditions(g, 2.0, opts(3));
  CHECK(std::abs(margin(low, "descendant_sum")) < 1e-12);
}

TEST_CASE("critical_exponent brackets log2/log3") {
  const MiddleThirdCantor c;
  const ExponentBracket b = critical_exponent(c, 1e-3, opts(8));
  CHECK(b.s_low <= kLog23);
  CHECK(b.s_high >= kLog23);
  CHECK(b.s_high - b.s_low <= 2e-3);
  CHECK(b.lower.s == b.s_low);
  CHECK(b.upper.s == b.s_high);
  CHECK(passed(check_lower_conditions(c, b.s_low, opts(8))));
  CHECK(passed(check_upper_conditions(c, b.s_high, opts(8))));
  CHECK_THROWS_AS(critical_exponent(c, 0.0, opts(8)), PreconditionViolation);
}

TEST_CASE("completeness away from the critical value") {
  const MiddleThirdCantor c;
  for (double s = 0.05; s < 1.0; s += 0.01) {
    if (std::abs(s - kLog23) <= 1e-2) continue;
    const bool lo = passed(check_lower_conditions(c, s, opts(6)));
    const bool hi = passed(check_upper_conditions(c, s, opts(6)));
    CHECK((lo || hi));
    CHECK(lo == (s < kLog23));
  }
}

TEST_CASE("lower certificates are monotone in s") {
  const MiddleThirdCantor c;
  bool seen_fail = false;
  for (double s = 0.05; s < 1.0; s += 0.05) {
    const bool ok = passed(check_lower_conditions(c, s, opts(6)));
    if (seen_fail) CHECK_FALSE(ok);
    seen_fail = seen_fail || !ok;
  }
  CHECK(seen_fail);
}

TEST_CASE("degenerate chain has no bracket") {
  const SingleChildChain chain;
  const CheckResult r = check_lower_conditions(chain, 0.1, opts(4));
  REQUIRE_FALSE(passed(r));
  CHECK(std::get<CheckFailure>(r).condition == "descendant_sum");
  CHECK_THROWS_AS(critical_exponent(chain, 1e-3, opts(4)), NoBracket);
}

TEST_CASE("preconditions and tail bounds") {
  const MiddleThirdCantor c;
  CHECK_THROWS_AS(check_lower_conditions(c, 0.0, opts(3)), PreconditionViolation);
  CHECK_THROWS_AS(check_lower_conditions(c, 0.5, opts(0)), PreconditionViolation);
  CheckOptions o = opts(3);
  o.from_depth = 3;
  CHECK_THROWS_AS(check_upper_conditions(c, 0.7, o), PreconditionViolation);
  const OpenCantor open;
  CHECK_THROWS_AS(check_upper_conditions(open, 0.7, opts(3)), TailBoundMissing);
}

TEST_CASE("from_depth restricts the checked parents") {
  const MiddleThirdCantor c;
  CheckOptions o = opts(6);
  o.from_depth = 4;
  const CheckResult r = check_lower_conditions(c, 0.6, o);
  REQUIRE(passed(r));
  CHECK(std::get<DimensionCertificate>(r).nodes_checked == 16 + 32);
}

TEST_CASE("results do not depend on threads or child order") {
  const MiddleThirdCantor c;
  const ReversedCantor rc;
  for (double s : {0.55, 0.62, 0.64, 0.7}) {
    const auto a = result_to_json(check_lower_conditions(c, s, opts(9, 1))).dump();
    const auto b = result_to_json(check_lower_conditions(c, s, opts(9, 4))).dump();
    CHECK(a == b);
    const auto u1 = result_to_json(check_upper_conditions(c, s, opts(9, 1))).dump();
    const auto u3 = result_to_json(check_upper_conditions(c, s, opts(9, 3))).dump();
    CHECK(u1 == u3);

    const CheckResult x = check_lower_conditions(c, s, opts(9));
    const CheckResult y = check_lower_conditions(rc, s, opts(9));
    CHECK(passed(x) == passed(y));
    if (passed(x)) CHECK(margin(x, "descendant_sum") == margin(y, "descendant_sum"));
  }
}

TEST_CASE("certificate JSON") {
  const MiddleThirdCantor c;
  const auto j = result_to_json(check_lower_conditions(c, 0.62, opts(4)));
  CHECK(j["kind"] == "LowerBound");
  CHECK(j["s"].get<double>() == 0.62);
  CHECK(j["depth_checked"] == 4);
  CHECK(j["conditions"].is_array());
  const auto f = result_to_json(check_lower_conditions(c, 0.65, opts(4)));
  CHECK(f.contains("condition"));
}
