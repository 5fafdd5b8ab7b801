#include "hurwitz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "hurwitz/cantor.hpp"
#include "hurwitz/constants.hpp"
#include "hurwitz/digit_sets.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/geometry.hpp"
#include "hurwitz/hcf.hpp"
#include "hurwitz/jarnik.hpp"
#include "hurwitz/kernels.hpp"
#include "hurwitz/parse.hpp"

namespace hurwitz {
namespace {

using Json = nlohmann::ordered_json;
using Rng = std::mt19937_64;
__extension__ using i128 = __int128;

constexpr std::size_t kMaxCounterexamples = 5;

class Invariant {
 public:
  explicit Invariant(std::string name) : name_(std::move(name)) {}

  void check(bool ok, const std::function<std::string()>& describe) {
    ++checked_;
    if (ok) return;
    ++failed_;
    if (cex_.size() < kMaxCounterexamples) cex_.push_back(describe());
  }
  Json& extra() { return extra_; }
  bool passed() const { return failed_ == 0 && checked_ > 0; }

  Json to_json() const {
    Json j;
    j["name"] = name_;
    j["passed"] = passed();
    j["checked"] = checked_;
    j["failed"] = failed_;
    for (const auto& [k, v] : extra_.items()) j[k] = v;
    j["counterexamples"] = cex_;
    return j;
  }

 private:
  std::string name_;
  long checked_ = 0;
  long failed_ = 0;
  std::vector<std::string> cex_;
  Json extra_ = Json::object();
};

Json finish(std::string_view suite, const VerifyOptions& opt, long samples, int depth,
            const std::vector<Invariant>& inv) {
  Json j;
  j["suite"] = std::string(suite);
  j["seed"] = opt.seed;
  j["samples"] = samples;
  if (depth > 0) j["depth"] = depth;
  bool ok = true;
  Json arr = Json::array();
  for (const auto& i : inv) {
    ok = ok && i.passed();
    arr.push_back(i.to_json());
  }
  j["passed"] = ok;
  j["invariants"] = std::move(arr);
  return j;
}

long pick(long given, long fallback) { return given > 0 ? given : fallback; }

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

mpz_class random_mpz(Rng& rng, int bits) {
  mpz_class v = 0;
  for (int b = 0; b < bits; b += 32) v = (v << 32) + static_cast<unsigned long>(rng() & 0xffffffffu);
  v >>= (((bits + 31) / 32) * 32 - bits);
  return (rng() & 1) ? mpz_class(-v) : v;
}

GaussianInt random_gaussian(Rng& rng, int bits) { return {random_mpz(rng, bits), random_mpz(rng, bits)}; }

// Uniform-ish Gaussian rational reduced into the fundamental domain.
GaussianRational random_in_domain(Rng& rng, int bits) {
  for (;;) {
    GaussianInt den = random_gaussian(rng, bits);
    if (den.is_zero()) continue;
    GaussianRational z(random_gaussian(rng, bits + 2), den);
    z = z - GaussianRational(nearest_gaussian(z));
    if (!z.is_zero()) return z;
  }
}

GaussianRational random_rational(Rng& rng, int bits) {
  for (;;) {
    GaussianInt den = random_gaussian(rng, bits);
    if (!den.is_zero()) return {random_gaussian(rng, bits + 3), den};
  }
}

std::string join(std::span<const GaussianInt> d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + d[i].to_string();
  return s + "]";
}

// Random admissible prefix of E_sqrt8 with 8 <= |a|^2 <= max_norm.
std::vector<GaussianInt> random_prefix(Rng& rng, int n, std::int64_t max_norm) {
  static std::map<std::int64_t, std::vector<std::vector<GaussianInt>>> cache;
  auto& per_shape = cache[max_norm];
  if (per_shape.empty()) {
    for (const auto& s : FeasibleShape::catalogue()) {
      per_shape.push_back(valid_digits(s, NormFilter::euclid_sq(8, max_norm)));
    }
  }
  std::vector<GaussianInt> out;
  FeasibleShape shape = FeasibleShape::full();
  for (int k = 0; k < n; ++k) {
    const auto& choices = per_shape[static_cast<std::size_t>(shape.index())];
    const auto& a = choices[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(choices.size()) - 1))];
    out.push_back(a);
    shape = *digit_transition(shape, a).shape;
  }
  return out;
}

// ---------------------------------------------------------------- prop21

Json suite_prop21(const VerifyOptions& opt) {
  const long samples = pick(opt.samples, 10000);
  const int depth = static_cast<int>(pick(opt.depth, 30));
  Rng rng(opt.seed);
  Invariant approx("approximation |z - p_n/q_n| |q_n|^2 <= 1");
  Invariant unimod("unimodularity |p_n q_{n-1} - p_{n-1} q_n| = 1");
  Invariant growth("|q_n|^2 strictly increasing");
  Invariant roundtrip("evaluate(expand(z, n)) within 2/|q_n|^2");
  Invariant exact_end("terminated expansions evaluate to z");
  Invariant shift("digits of T(z) are the digits of z shifted");
  Invariant expo("log|q_n|/n bounded below by a positive constant");
  double min_rate = std::numeric_limits<double>::infinity();
  long total_digits = 0;
  int max_depth_seen = 0;

  for (long k = 0; k < samples; ++k) {
    const GaussianRational z = random_in_domain(rng, 56);
    const HcfExpansion e = expand(z, depth);
    const int n_max = e.depth();
    total_digits += n_max;
    max_depth_seen = std::max(max_depth_seen, n_max);
    const auto who = [&] { return z.to_string(); };
    // z = num/den; compare by cross-multiplication to stay in Z[i].
    const GaussianInt& zn = z.num();
    const GaussianInt& zd = z.den();
    const mpz_class dn = zd.norm();
    for (int n = 1; n <= n_max; ++n) {
      const GaussianInt& q = e.q(n);
      const mpz_class qn = q.norm();
      // |z - p/q|^2 |q|^4 = |zn q - p zd|^2 |q|^2 / |zd|^2
      approx.check((zn * q - e.p(n) * zd).norm() * qn <= dn, [&] { return who() + " n=" + std::to_string(n); });
      const GaussianInt det = e.p(n) * e.q(n - 1) - e.p(n - 1) * q;
      unimod.check(det.norm() == 1, [&] { return who() + " n=" + std::to_string(n) + " det=" + det.to_string(); });
      growth.check(qn > e.q(n - 1).norm(), [&] { return who() + " n=" + std::to_string(n); });
      const GaussianRational back = evaluate(std::span(e.digits).first(static_cast<std::size_t>(n)));
      // |z - P/Q|^2 |q|^4 <= 4 with back = P/Q.
      const mpz_class lhs = (zn * back.den() - back.num() * zd).norm() * qn * qn;
      roundtrip.check(lhs <= 4 * dn * back.den().norm(), [&] { return who() + " n=" + std::to_string(n); });
      if (n >= 2) {
        const double rate = 0.5 * std::log(qn.get_d()) / n;
        min_rate = std::min(min_rate, rate);
        expo.check(rate > 0, [&] { return who() + " n=" + std::to_string(n); });
      }
    }
    if (e.terminated) {
      exact_end.check(evaluate(e.digits) == z, who);
    }
    if (n_max >= 2) {
      const auto step = shift_map(ExactState{z, 0});
      const HcfExpansion tail = expand(step.next.z, depth - 1);
      const std::vector<GaussianInt> want(e.digits.begin() + 1, e.digits.end());
      const std::size_t m = std::min(want.size(), tail.digits.size());
      shift.check(m == want.size() && std::equal(want.begin(), want.end(), tail.digits.begin()), who);
    }
  }
  expo.extra()["empirical_min_log_growth"] = min_rate;
  expo.extra()["empirical_psi"] = std::exp(min_rate);
  approx.extra()["total_digits"] = total_digits;
  approx.extra()["max_depth"] = max_depth_seen;
  return finish("prop21", opt, samples, depth, {approx, unimod, growth, roundtrip, exact_end, shift, expo});
}

// -------------------------------------------------------------- gaussian

Json suite_gaussian(const VerifyOptions& opt) {
  const long samples = pick(opt.samples, 10000);
  Rng rng(opt.seed);
  Invariant cell("z - nearest_gaussian(z) lies in the fundamental domain");
  Invariant equi("nearest_gaussian(z + g) = nearest_gaussian(z) + g");
  Invariant norms_inv("||z|| <= |z| <= sqrt2 ||z||");
  Invariant euclid("divmod: a = qb + r with |r|^2 <= |b|^2/2");
  Invariant gcd_inv("gcd divides both arguments");
  Invariant canon("canonical form survives to_string/parse roundtrip");
  for (long k = 0; k < samples; ++k) {
    const GaussianRational z = random_rational(rng, 40);
    const GaussianInt g = random_gaussian(rng, 30);
    const GaussianInt n = nearest_gaussian(z);
    cell.check(in_fundamental_domain(z - GaussianRational(n)), [&] { return z.to_string(); });
    equi.check(nearest_gaussian(z + GaussianRational(g)) == n + g,
               [&] { return z.to_string() + " g=" + g.to_string(); });
    const Norms nz = norms(z);
    norms_inv.check(nz.sup <= nz.abs * (1 + 1e-15) && nz.abs <= std::numbers::sqrt2 * nz.sup * (1 + 1e-15),
                    [&] { return z.to_string(); });
    const GaussianInt a = random_gaussian(rng, 50);
    GaussianInt b = random_gaussian(rng, 25);
    if (b.is_zero()) b = GaussianInt(1);
    const auto [q, r] = divmod(a, b);
    euclid.check(q * b + r == a && 2 * r.norm() <= b.norm(), [&] { return a.to_string() + " / " + b.to_string(); });
    const GaussianInt c = random_gaussian(rng, 20);
    const GaussianInt d = gcd(a * c, b * c);
    gcd_inv.check(!d.is_zero() && divmod(a * c, d).second.is_zero() && divmod(b * c, d).second.is_zero() &&
                      divmod(d, c).second.is_zero(),
                  [&] { return a.to_string() + ", " + b.to_string() + ", " + c.to_string(); });
    const Number back = parse_number(z.to_string());
    canon.check(std::holds_alternative<GaussianRational>(back) && std::get<GaussianRational>(back) == z,
                [&] { return z.to_string(); });
  }
  return finish("gaussian", opt, samples, 0, {cell, equi, norms_inv, euclid, gcd_inv, canon});
}

// --------------------------------------------------------------- moebius

Json suite_moebius(const VerifyOptions& opt) {
  const long samples = pick(opt.samples, 2000);
  const int depth = static_cast<int>(pick(opt.depth, 6));
  Rng rng(opt.seed);
  Invariant inverse("moebius_t(moebius_v(w)) = w");
  Invariant at_zero("moebius_v(prefix, 0) = p_n/q_n");
  Invariant orbit("moebius_t(prefix_n(z), z) = T^n(z)");
  for (long k = 0; k < samples; ++k) {
    const GaussianRational z = random_in_domain(rng, 60);
    const HcfExpansion e = expand(z, depth);
    if (e.depth() == 0) continue;
    const int n = static_cast<int>(uniform(rng, 1, e.depth()));
    const std::span<const GaussianInt> prefix(e.digits.data(), static_cast<std::size_t>(n));
    const GaussianRational w = random_rational(rng, 20);
    const auto who = [&] { return z.to_string() + " n=" + std::to_string(n) + " w=" + w.to_string(); };
    try {
      inverse.check(moebius_t(prefix, moebius_v(prefix, w)) == w, who);
    } catch (const DivisionByZero&) {
      // w at the pole of v; nothing to compare.
    }
    at_zero.check(moebius_v(prefix, GaussianRational(0)) == GaussianRational(e.p(n), e.q(n)), who);
    ExactState st{z, 0};
    for (int i = 0; i < n; ++i) st = shift_map(st).next;
    orbit.check(moebius_t(prefix, z) == st.z, who);
  }
  return finish("moebius", opt, samples, depth, {inverse, at_zero, orbit});
}

// ----------------------------------------------------------- transitions

// Open box minus closed unit disks, for y = (u + iv)/2^m with integer u, v.
bool image_member(const std::vector<Centre>& centres, std::int64_t u, std::int64_t v, int m) {
  const i128 D = i128(1) << m;
  if (2 * (u < 0 ? -i128(u) : i128(u)) >= D || 2 * (v < 0 ? -i128(v) : i128(v)) >= D) return false;
  for (const auto& c : centres) {
    const i128 dx = i128(u) - c.re * D;
    const i128 dy = i128(v) - c.im * D;
    if (dx * dx + dy * dy <= D * D) return false;
  }
  return true;
}

// 1/(a + y) in the region, y = (u + iv)/2^m.
bool preimage_member(const std::vector<Centre>& centres, std::int64_t ar, std::int64_t ai, std::int64_t u,
                     std::int64_t v, int m) {
  const i128 D = i128(1) << m;
  const i128 wr = ar * D + u;
  const i128 wi = ai * D + v;
  const i128 nw = wr * wr + wi * wi;
  if (nw == 0) return false;
  // z = conj(w)/|w|^2 with w = W/D: |Re z| < 1/2 iff 2|Wr| D < |W|^2.
  if (2 * (wr < 0 ? -wr : wr) * D >= nw || 2 * (wi < 0 ? -wi : wi) * D >= nw) return false;
  // |z - c| > 1 iff |D - c W| > |W|.
  for (const auto& c : centres) {
    const i128 xr = D - (c.re * wr - c.im * wi);
    const i128 xi = -(c.re * wi + c.im * wr);
    if (xr * xr + xi * xi <= nw) return false;
  }
  return true;
}

Json suite_transitions(const VerifyOptions& opt) {
  const long pairs = pick(opt.samples, 1000);
  Invariant fixed_minus2("F4 with digit -2 gives the box minus D(1)");
  Invariant fixed_large("F4 with 8 <= |a|^2 <= 36 gives F4");
  Invariant closure("shapes reachable from F4 stay inside the 13-shape catalogue");
  Invariant memo("memoised transitions equal direct computation on |re|,|im| <= 8");
  Invariant oracle("exact classification matches the sampling oracle");

  const Transition t2 = digit_transition(FeasibleShape::full(), GaussianInt(-2));
  fixed_minus2.check(t2.shape && t2.shape->centres() == std::vector<Centre>{{1, 0}} && !t2.degenerate,
                     [&] { return t2.shape ? t2.shape->name() : std::string("Empty"); });
  for (long re = -6; re <= 6; ++re) {
    for (long im = -6; im <= 6; ++im) {
      const long n = re * re + im * im;
      if (n < 8 || n > 36) continue;
      const Transition t = digit_transition(FeasibleShape::full(), GaussianInt(re, im));
      fixed_large.check(t.shape && *t.shape == FeasibleShape::full(),
                        [&] { return GaussianInt(re, im).to_string(); });
    }
  }

  std::set<int> seen{0};
  std::vector<FeasibleShape> queue{FeasibleShape::full()};
  while (!queue.empty()) {
    const FeasibleShape s = queue.back();
    queue.pop_back();
    for (long re = -8; re <= 8; ++re) {
      for (long im = -8; im <= 8; ++im) {
        if (re * re + im * im < 2) continue;
        const GaussianInt a(re, im);
        try {
          const Transition t = digit_transition(s, a);
          closure.check(true, [] { return std::string(); });
          if (t.shape && seen.insert(t.shape->index()).second) queue.push_back(*t.shape);
        } catch (const UnclassifiableShape& e) {
          closure.check(false, [&] { return s.name() + " digit " + a.to_string() + ": " + e.what(); });
        }
      }
    }
  }
  closure.extra()["shapes_reached"] = seen.size();
  Json names = Json::array();
  for (int i : seen) names.push_back(FeasibleShape::catalogue()[static_cast<std::size_t>(i)].name());
  closure.extra()["shapes"] = names;
  if (seen.size() != 13) closure.check(false, [&] { return "reached " + std::to_string(seen.size()) + " shapes"; });

  for (const auto& s : FeasibleShape::catalogue()) {
    for (long re = -8; re <= 8; ++re) {
      for (long im = -8; im <= 8; ++im) {
        if (re * re + im * im < 2) continue;
        const GaussianInt a(re, im);
        const Transition x = digit_transition(s, a);
        const Transition y = digit_transition_direct(s, a);
        memo.check(x.shape == y.shape && x.degenerate == y.degenerate,
                   [&] { return s.name() + " digit " + a.to_string(); });
      }
    }
  }

  const OracleStats st = transition_sampling_oracle(pairs, opt.points, opt.seed);
  for (long k = 0; k < st.pairs; ++k) oracle.check(true, [] { return std::string(); });
  if (st.misclassified > 0) {
    for (const auto& c : st.counterexamples) oracle.check(false, [&] { return c; });
  }
  oracle.extra()["pairs"] = st.pairs;
  oracle.extra()["points"] = st.points;
  oracle.extra()["points_in_image"] = st.inside;
  oracle.extra()["misclassified_points"] = st.misclassified;
  return finish("transitions", opt, pairs, 0, {fixed_minus2, fixed_large, closure, memo, oracle});
}

// -------------------------------------------------------------- sandwich

Json suite_sandwich(const VerifyOptions& opt) {
  const long samples = pick(opt.samples, 500);
  const int depth = static_cast<int>(pick(opt.depth, 12));
  Rng rng(opt.seed);
  const auto& c = constants();
  Invariant solvers("xi from the quadratic formula and the fixed-point iteration agree to 1e-30");
  Invariant gamma_inv("gamma = 2|xi|/(1+|xi|)^2");
  Invariant sandwich("witness distance in [gamma/|q_n|^2, 2/|q_n|^2]");
  Invariant fast("double witness distance agrees with the MPFR value to 1e-12");

  solvers.check(c.solver_gap <= 1e-30, [&] { return "gap " + std::to_string(c.solver_gap); });
  const BigFloat one(1.0, c.precision);
  const BigFloat g_check = BigFloat(2.0, c.precision) * c.abs_xi / ((c.abs_xi + one) * (c.abs_xi + one));
  gamma_inv.check(abs(g_check - c.gamma_big).to_double() < 1e-60, [] { return std::string("gamma mismatch"); });
  solvers.extra()["solver_gap"] = c.solver_gap;
  solvers.extra()["iterations"] = c.iterations;

  const BigComplex inv_xi = c.xi.reciprocal();
  const BigFloat gamma = c.gamma_big;
  const BigFloat two(2.0, c.precision);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (long k = 0; k < samples; ++k) {
    const int n = static_cast<int>(uniform(rng, 1, depth));
    const auto prefix = random_prefix(rng, n, 200);
    const QPair qp = qpair_of(prefix);
    const BigComplex x = moebius_v(prefix, inv_xi);
    const BigComplex y = moebius_v(prefix, -inv_xi);
    const BigFloat scaled = (x - y).abs() * BigFloat(qp.q.norm(), c.precision);
    lo = std::min(lo, scaled.to_double());
    hi = std::max(hi, scaled.to_double());
    sandwich.check(scaled >= gamma && scaled <= two, [&] { return join(prefix) + " ratio " + scaled.to_string(20); });
    const double w = witness_distance(qp.q_prev, qp.q) * qp.q.norm().get_d();
    fast.check(std::fabs(w - scaled.to_double()) <= 1e-12 * scaled.to_double(), [&] { return join(prefix); });
  }
  sandwich.extra()["gamma"] = c.gamma;
  sandwich.extra()["min_ratio"] = lo;
  sandwich.extra()["max_ratio"] = hi;
  return finish("sandwich", opt, samples, depth, {solvers, gamma_inv, sandwich, fast});
}

// ------------------------------------------------------------ separation

Json suite_separation(const VerifyOptions& opt) {
  const long samples = pick(opt.samples, 5000);
  const int depth = static_cast<int>(pick(opt.depth, 6));
  Rng rng(opt.seed);
  const auto& c = constants();
  Invariant tails("|(a + alpha) - (b + beta)| >= k_sep for tails with first digit |.| >= sqrt8");
  Invariant gaps("sampled sibling cylinder distances >= sibling_gap (E_3^6, witness scale)");
  // k = 1 - 2 sqrt2/3 at working precision.
  const BigFloat k = BigFloat(1.0, c.precision) - BigFloat(2.0, c.precision) * sqrt(BigFloat(2.0, c.precision)) /
                                                      BigFloat(3.0, c.precision);
  const BigFloat k2 = k * k;
  double min_dist = std::numeric_limits<double>::infinity();
  const auto tail = [&](Rng& r) {
    const auto d = random_prefix(r, static_cast<int>(uniform(r, 1, depth)), 200);
    return evaluate(d);
  };
  for (long i = 0; i < samples; ++i) {
    GaussianInt a = random_prefix(rng, 1, 200)[0];
    GaussianInt b = random_prefix(rng, 1, 200)[0];
    if (a == b) continue;
    const GaussianRational alpha = tail(rng);
    const GaussianRational beta = tail(rng);
    const GaussianRational d = (GaussianRational(a) + alpha) - (GaussianRational(b) + beta);
    const BigFloat dn(d.norm(), c.precision);
    min_dist = std::min(min_dist, std::sqrt(dn.to_double()));
    tails.check(dn >= k2, [&] { return a.to_string() + "+" + alpha.to_string() + " vs " + b.to_string() + "+" + beta.to_string(); });
  }
  tails.extra()["k_sep"] = c.k_sep;
  tails.extra()["min_distance"] = min_dist;

  // Sibling cylinders of E_3^6: points v_parent(1/(b + t)) for admissible tails t.
  const HcfTreeFamily fam = build_family(DigitFilter::annulus_sq(9, 36), DiameterChoice::kWitness);
  const auto digits = fam.level_digits(1);
  double worst = std::numeric_limits<double>::infinity();
  const long parents = std::max<long>(1, samples / 100);
  for (long i = 0; i < parents; ++i) {
    const int n = static_cast<int>(uniform(rng, 0, 2));
    std::vector<GaussianInt> prefix;
    for (int j = 0; j < n; ++j) prefix.push_back(digits[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(digits.size()) - 1))]);
    const QPair qp = qpair_of(prefix);
    const HcfTreeFamily::Node node{n, qp.q_prev.re.get_si(), qp.q_prev.im.get_si(), qp.q.re.get_si(), qp.q.im.get_si()};
    const double gap = fam.sibling_gap(node);
    std::vector<std::pair<GaussianInt, std::vector<std::complex<double>>>> pts;
    for (int s = 0; s < 6; ++s) {
      const GaussianInt b = digits[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(digits.size()) - 1))];
      std::vector<GaussianInt> child = prefix;
      child.push_back(b);
      std::vector<std::complex<double>> v;
      for (int t = 0; t < 4; ++t) {
        std::vector<GaussianInt> full = child;
        const auto more = random_prefix(rng, 3, 36);
        full.insert(full.end(), more.begin(), more.end());
        const GaussianRational x = evaluate(full);
        v.emplace_back(x.re().get_d(), x.im().get_d());
      }
      pts.emplace_back(b, std::move(v));
    }
    for (std::size_t x = 0; x < pts.size(); ++x) {
      for (std::size_t y = x + 1; y < pts.size(); ++y) {
        if (pts[x].first == pts[y].first) continue;
        for (const auto& p : pts[x].second) {
          for (const auto& q : pts[y].second) {
            const double d = std::abs(p - q);
            worst = std::min(worst, d / gap);
            gaps.check(d >= gap, [&] { return join(prefix) + " children " + pts[x].first.to_string() + ", " + pts[y].first.to_string(); });
          }
        }
      }
    }
  }
  gaps.extra()["min_distance_over_gap"] = worst;
  return finish("separation", opt, samples, depth, {tails, gaps});
}

// --------------------------------------------------------------- kernels

Json suite_kernels(const VerifyOptions& opt) {
  const long samples = pick(opt.samples, 200);
  Rng rng(opt.seed);
  Invariant sum("sum_exp_scaled scalar vs avx2 (relative 1e-13)");
  Invariant logs("child_log_norms scalar vs avx2 (relative 1e-13)");
  Invariant mask("region_mask scalar vs avx2 (bit-exact)");
  Invariant lattice("lattice_power_sum scalar vs avx2 (relative 1e-13)");
  const bool avx = kernels::detected_isa() == kernels::Isa::kAvx2;
  const auto rel = [](double a, double b) { return std::fabs(a - b) <= 1e-13 * std::max(std::fabs(a), std::fabs(b)); };
  if (avx) {
    std::uniform_real_distribution<double> U(-40.0, 5.0);
    for (long k = 0; k < samples; ++k) {
      const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 300));
      std::vector<double> x(n);
      for (auto& v : x) v = U(rng);
      const double s = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
      const double a = kernels::scalar::sum_exp_scaled(x, s);
      const double b = kernels::avx2::sum_exp_scaled(x, s);
      sum.check(rel(a, b), [&] { return "n=" + std::to_string(n); });

      std::vector<double> br(n), bi(n), o1(n), o2(n);
      for (std::size_t i = 0; i < n; ++i) {
        br[i] = static_cast<double>(uniform(rng, -60, 60));
        bi[i] = static_cast<double>(uniform(rng, -60, 60));
      }
      const double qr = static_cast<double>(uniform(rng, -100000, 100000));
      const double qi = static_cast<double>(uniform(rng, -100000, 100000));
      const double pr = static_cast<double>(uniform(rng, -1000, 1000));
      const double pi = static_cast<double>(uniform(rng, -1000, 1000));
      kernels::scalar::child_log_norms(pr, pi, qr, qi, br, bi, o1);
      kernels::avx2::child_log_norms(pr, pi, qr, qi, br, bi, o2);
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::isfinite(o1[i]) || std::isfinite(o2[i])) ok = ok && rel(o1[i], o2[i]);
      }
      logs.check(ok, [&] { return "q=" + std::to_string(qr) + "+" + std::to_string(qi) + "i"; });

      std::vector<double> x2(n), y2(n);
      std::vector<std::uint8_t> m1(n), m2(n);
      for (std::size_t i = 0; i < n; ++i) {
        x2[i] = std::ldexp(static_cast<double>(uniform(rng, -(1 << 20), 1 << 20)), -21);
        y2[i] = std::ldexp(static_cast<double>(uniform(rng, -(1 << 20), 1 << 20)), -21);
      }
      const auto& shape = FeasibleShape::catalogue()[static_cast<std::size_t>(uniform(rng, 0, 12))];
      std::vector<double> cx, cy;
      for (const auto& ct : shape.centres()) {
        cx.push_back(ct.re);
        cy.push_back(ct.im);
      }
      kernels::scalar::region_mask(x2, y2, cx, cy, m1);
      kernels::avx2::region_mask(x2, y2, cx, cy, m2);
      mask.check(m1 == m2, [&] { return shape.name(); });

      const double t = std::uniform_real_distribution<double>(2.2, 4.0)(rng);
      const double y = static_cast<double>(uniform(rng, 0, 50));
      const double l1 = kernels::scalar::lattice_row_power_sum(y * y, 1, 400, t);
      const double l2 = kernels::avx2::lattice_row_power_sum(y * y, 1, 400, t);
      lattice.check(rel(l1, l2), [&] { return "t=" + std::to_string(t); });
    }
  }
  std::vector<Invariant> inv{sum, logs, mask, lattice};
  Json j = finish("kernels", opt, samples, 0, inv);
  j["isa"] = std::string(kernels::isa_name(kernels::detected_isa()));
  if (!avx) {
    // Nothing to compare on a scalar-only host.
    j["passed"] = true;
    j["skipped"] = true;
  }
  return j;
}

// ---------------------------------------------------------------- jarnik

Json suite_jarnik(const VerifyOptions& opt) {
  const int depth = static_cast<int>(pick(opt.depth, 8));
  const MiddleThirdCantor cantor;
  const double dim = std::log(2.0) / std::log(3.0);
  CheckOptions co;
  co.depth = depth;
  co.threads = opt.threads;
  Invariant complete("lower or upper certificate exists away from log2/log3");
  Invariant monotone("lower certificate at s implies one at s' < s");
  Invariant lambda("Lambda_s non-increasing when the upper check passes");
  Invariant order("results independent of thread count");
  bool last_lower = true;
  for (int k = 1; k < 100; ++k) {
    const double s = k / 100.0;
    const bool lower = passed(check_lower_conditions(cantor, s, co));
    const CheckResult up = check_upper_conditions(cantor, s, co);
    if (std::fabs(s - dim) > 1e-2) complete.check(lower || passed(up), [&] { return "s=" + std::to_string(s); });
    monotone.check(last_lower || !lower, [&] { return "s=" + std::to_string(s); });
    last_lower = lower;
    if (passed(up)) {
      const auto& cert = std::get<DimensionCertificate>(up);
      bool ok = true;
      for (std::size_t i = 1; i < cert.stages.size(); ++i) {
        ok = ok && *cert.stages[i].lambda <= *cert.stages[i - 1].lambda * (1 + 1e-12);
      }
      lambda.check(ok, [&] { return "s=" + std::to_string(s); });
    }
  }
  CheckOptions one = co, two = co;
  one.threads = 1;
  two.threads = 3;
  const HcfTreeFamily fam = build_family(DigitFilter::annulus_sq(9, 36));
  for (double s : {0.5, 0.62, 0.7}) {
    order.check(result_to_json(check_lower_conditions(cantor, s, one)) ==
                    result_to_json(check_lower_conditions(cantor, s, two)),
                [&] { return "cantor s=" + std::to_string(s); });
  }
  CheckOptions h1 = one, h2 = two;
  h1.depth = h2.depth = 2;
  order.check(result_to_json(check_lower_conditions(fam, 0.6, h1)) == result_to_json(check_lower_conditions(fam, 0.6, h2)),
              [] { return std::string("E_3^6 lower s=0.6"); });
  order.check(result_to_json(check_upper_conditions(fam, 1.2, h1)) == result_to_json(check_upper_conditions(fam, 1.2, h2)),
              [] { return std::string("E_3^6 upper s=1.2"); });
  return finish("jarnik", opt, 99, depth, {complete, monotone, lambda, order});
}

// ------------------------------------------------------------ digit-sets

// Root s of sum_b (w_b / w_root)^s = 1 over the children of the root of
// E_3^6, with witness distances taken from MPFR evaluation of the witness
// points rather than from the family.
double one_step_root() {
  const auto& c = constants();
  const BigComplex inv_xi = c.xi.reciprocal();
  const auto dist = [&](std::span<const GaussianInt> d) {
    return (moebius_v(d, inv_xi) - moebius_v(d, -inv_xi)).abs().to_double();
  };
  const double root = dist({});
  std::vector<double> ratios;
  for (int x = -6; x <= 6; ++x) {
    for (int y = -6; y <= 6; ++y) {
      const int n = x * x + y * y;
      if (n < 9 || n > 36) continue;
      const GaussianInt b(x, y);
      ratios.push_back(dist(std::span(&b, 1)) / root);
    }
  }
  double lo = 0.0, hi = 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    double s = 0.0;
    for (double r : ratios) s += std::pow(r, mid);
    (s > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Json suite_digit_sets(const VerifyOptions& opt) {
  const int depth = static_cast<int>(pick(opt.depth, 3));
  const double gamma = constants().gamma;
  Invariant closed("lower check passes at s(M) - 1e-6 for L=3, M in {6, 10, 20}");
  Invariant brute("E_3^6 witness bracket contains the one-step crossing at the root");
  Invariant count("#{digits} >= M^2 recorded per instance");
  Invariant sandwich("family diameter bounds contain the witness distance");
  CheckOptions co;
  co.depth = depth;
  co.policy = SumPolicy::kEarlyExit;
  co.threads = opt.threads;
  Json per_m = Json::array();
  for (int M : {6, 10, 20}) {
    const HcfTreeFamily fam = build_family(DigitFilter::annulus_sq(9, static_cast<std::int64_t>(M) * M));
    const double s = lower_exponent_closed_form(M, gamma) - 1e-6;
    const CheckResult r = check_lower_conditions(fam, s, co);
    closed.check(passed(r), [&] { return "M=" + std::to_string(M) + " " + result_to_json(r).dump(); });
    const Json info = fam.info_json();
    count.check(info.contains("count_at_least_M_squared"), [&] { return "M=" + std::to_string(M); });
    per_m.push_back({{"M", M}, {"s", s}, {"digits", fam.level_size(1)}, {"count_at_least_M_squared", info["count_at_least_M_squared"]}});

    const HcfTreeFamily wit = build_family(DigitFilter::annulus_sq(9, static_cast<std::int64_t>(M) * M), DiameterChoice::kWitness);
    std::vector<HcfTreeFamily::Node> kids;
    fam.descendants(fam.root(), kids);
    for (const auto& kid : kids) {
      std::vector<HcfTreeFamily::Node> grand;
      fam.descendants(kid, grand);
      for (const auto& g : grand) {
        const Bounds b = fam.bounds(g);
        const double w = wit.bounds(g).lower * fam.scale();
        sandwich.check(w >= b.lower * (1 - 1e-12) && w <= b.upper * (1 + 1e-12), [&] { return fam.describe(g); });
      }
    }
  }
  closed.extra()["instances"] = per_m;

  // Sandwich diameters lose a factor 2/gamma per level, so no upper
  // certificate exists for M = 6; the bracket uses witness diameters.
  const HcfTreeFamily small = build_family(DigitFilter::annulus_sq(9, 36), DiameterChoice::kWitness);
  CheckOptions bo = co;
  bo.depth = std::min(depth, 3);
  const double root = one_step_root();
  try {
    const ExponentBracket br = critical_exponent(small, 1e-3, bo);
    brute.check(br.s_low <= root && root <= br.s_high, [&] {
      return "bracket [" + std::to_string(br.s_low) + ", " + std::to_string(br.s_high) + "] root " + std::to_string(root);
    });
    brute.extra()["s_low"] = br.s_low;
    brute.extra()["s_high"] = br.s_high;
  } catch (const NoBracket& e) {
    brute.check(false, [&] { return std::string(e.what()); });
  }
  brute.extra()["one_step_root"] = root;
  return finish("digit-sets", opt, 3, depth, {closed, brute, count, sandwich});
}

// -------------------------------------------------------------- el-prime

Json suite_el_prime(const VerifyOptions& opt) {
  const long samples = pick(opt.samples, 20);
  const int depth = static_cast<int>(pick(opt.depth, 2));
  Rng rng(opt.seed);
  Invariant ratios("prefixed Lambda_s ratios inside the distortion bounds of v_prefix");
  const DigitFilter base = DigitFilter::annulus_sq(9, 36);
  for (long k = 0; k < samples; ++k) {
    const auto prefix = random_prefix(rng, static_cast<int>(uniform(rng, 1, 3)), 100);
    const double s = std::uniform_real_distribution<double>(0.5, 1.5)(rng);
    const PrefixedCheck c = prefixed_lambda_check(prefix, base, s, depth);
    ratios.check(c.passed, [&] { return prefixed_check_to_json(c).dump(); });
  }
  return finish("el-prime", opt, samples, depth, {ratios});
}

using SuiteFn = Json (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"prop21", suite_prop21},         {"gaussian", suite_gaussian},     {"moebius", suite_moebius},
      {"transitions", suite_transitions}, {"sandwich", suite_sandwich}, {"separation", suite_separation},
      {"kernels", suite_kernels},       {"jarnik", suite_jarnik},         {"digit-sets", suite_digit_sets},
      {"el-prime", suite_el_prime}};
  return r;
}

}  // namespace

OracleStats transition_sampling_oracle(long pairs, long points, std::uint64_t seed) {
  constexpr int kBits = 20;
  Rng rng(seed);
  OracleStats st;
  const std::int64_t half = std::int64_t(1) << (kBits - 1);
  for (long p = 0; p < pairs; ++p) {
    const auto& shape = FeasibleShape::catalogue()[static_cast<std::size_t>(uniform(rng, 0, 12))];
    std::int64_t ar, ai;
    do {
      ar = uniform(rng, -6, 6);
      ai = uniform(rng, -6, 6);
    } while (ar * ar + ai * ai < 2);
    const Transition t = digit_transition(shape, GaussianInt(ar, ai));
    const std::vector<Centre> src = shape.centres();
    const std::vector<Centre> dst = t.shape ? t.shape->centres() : std::vector<Centre>{};
    ++st.pairs;
    for (long k = 0; k < points; ++k) {
      // Odd numerators over 2^20: never on a line Re, Im = +-1/2 + integer or a
      // unit circle about a Gaussian integer.
      const std::int64_t u = 2 * uniform(rng, -half / 2, half / 2 - 1) + 1;
      const std::int64_t v = 2 * uniform(rng, -half / 2, half / 2 - 1) + 1;
      const bool truth = preimage_member(src, ar, ai, u, v, kBits);
      const bool claim = t.shape.has_value() && image_member(dst, u, v, kBits);
      ++st.points;
      st.inside += claim;
      if (truth != claim) {
        ++st.misclassified;
        if (st.counterexamples.size() < kMaxCounterexamples) {
          st.counterexamples.push_back(shape.name() + " digit " + GaussianInt(ar, ai).to_string() + " y=(" +
                                       std::to_string(u) + "+" + std::to_string(v) + "i)/2^20 oracle=" +
                                       (truth ? "in" : "out") + " claim=" + (t.shape ? t.shape->name() : "Empty"));
        }
      }
    }
  }
  return st;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> n;
  for (const auto& [k, _] : registry()) n.push_back(k);
  return n;
}

Json run_suite(std::string_view name, const VerifyOptions& opt) {
  if (name == "all") {
    Json j;
    j["suite"] = "all";
    j["seed"] = opt.seed;
    bool ok = true;
    Json arr = Json::array();
    for (const auto& [k, fn] : registry()) {
      Json r = fn(opt);
      ok = ok && r["passed"].get<bool>();
      arr.push_back(std::move(r));
    }
    j["passed"] = ok;
    j["suites"] = std::move(arr);
    return j;
  }
  for (const auto& [k, fn] : registry()) {
    if (k == name) return fn(opt);
  }
  throw ParseError("unknown suite '" + std::string(name) + "'");
}

}  // namespace hurwitz
