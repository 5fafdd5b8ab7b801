#include "hurwitz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hurwitz/constants.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/lattice.hpp"

namespace hurwitz {
namespace {

Centre rotate(Centre c, int j) {
  for (int k = 0; k < ((j % 4) + 4) % 4; ++k) c = {-c.im, c.re};
  return c;
}

bool in_n8(int re, int im) {
  return std::abs(re) <= 1 && std::abs(im) <= 1 && !(re == 0 && im == 0);
}

bool is_corner(const Centre& c) { return c.re != 0 && c.im != 0; }

std::vector<Centre> sorted(std::vector<Centre> v) {
  std::sort(v.begin(), v.end(), [](const Centre& a, const Centre& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

long small(const mpz_class& v) {
  if (!v.fits_slong_p()) throw PreconditionViolation("digit component out of range");
  return v.get_si();
}

}  // namespace

const std::array<FeasibleShape, 13>& FeasibleShape::catalogue() {
  static const std::array<FeasibleShape, 13> all = [] {
    std::array<FeasibleShape, 13> a{};
    a[0] = full();
    int i = 1;
    for (int k = 1; k <= 3; ++k) {
      for (int j = 0; j < 4; ++j) a[static_cast<std::size_t>(i++)] = {j, k};
    }
    return a;
  }();
  return all;
}

std::vector<Centre> FeasibleShape::centres() const {
  std::vector<Centre> base_centres;
  switch (base) {
    case 1: base_centres = {{-1, 0}, {0, -1}}; break;
    case 2: base_centres = {{-1, 0}}; break;
    case 3: base_centres = {{-1, -1}}; break;
    default: break;
  }
  for (auto& c : base_centres) c = rotate(c, rotation);
  return sorted(base_centres);
}

int FeasibleShape::index() const {
  if (base == 4) return 0;
  return 1 + (base - 1) * 4 + rotation;
}

std::string FeasibleShape::name() const {
  if (base == 4) return "F4";
  if (rotation == 0) return "F" + std::to_string(base);
  if (rotation == 1) return "i F" + std::to_string(base);
  return "i^" + std::to_string(rotation) + " F" + std::to_string(base);
}

bool RegionPredicate::contains(const GaussianRational& z) const {
  const mpq_class half(1, 2);
  const mpq_class x = z.re();
  const mpq_class y = z.im();
  if (!(x > -half && x < half && y > -half && y < half)) return false;
  for (const auto& c : centres) {
    const mpq_class dx = x - c.re;
    const mpq_class dy = y - c.im;
    if (dx * dx + dy * dy <= 1) return false;
  }
  return true;
}

bool RegionPredicate::contains(const BigComplex& z, BoundaryPolicy policy, double abs_error) const {
  const mpfr_prec_t prec = z.precision();
  const double tol = std::max(abs_error, std::ldexp(1.0, 8 - static_cast<int>(prec)));
  const BigFloat half(0.5, prec);
  const auto check = [&](const BigFloat& v, const char* what) {
    if (policy == BoundaryPolicy::kStrict && std::fabs(v.to_double()) <= tol) {
      throw AmbiguousBoundary(std::string("point ") + z.to_string(12) + " is within precision of " + what);
    }
    return v.sign() > 0;
  };
  bool inside = true;
  inside = check(half - z.re(), "Re = 1/2") && inside;
  inside = check(z.re() + half, "Re = -1/2") && inside;
  inside = check(half - z.im(), "Im = 1/2") && inside;
  inside = check(z.im() + half, "Im = -1/2") && inside;
  for (const auto& c : centres) {
    const BigFloat dx = z.re() - BigFloat(static_cast<double>(c.re), prec);
    const BigFloat dy = z.im() - BigFloat(static_cast<double>(c.im), prec);
    inside = check(dx * dx + dy * dy - BigFloat(1.0, prec), "a unit circle") && inside;
  }
  return inside;
}

RegionPredicate region_of(const FeasibleShape& shape) { return {shape.centres()}; }

bool shape_membership(const FeasibleShape& shape, const GaussianRational& z) {
  return region_of(shape).contains(z);
}

bool shape_membership(const FeasibleShape& shape, const BigComplex& z, BoundaryPolicy policy) {
  return region_of(shape).contains(z, policy);
}

Transition digit_transition_direct(const FeasibleShape& shape, const GaussianInt& a) {
  if (a.norm() < 2) throw PreconditionViolation("digit " + a.to_string() + " is not in I");
  const long ar = small(a.re);
  const long ai = small(a.im);
  // w = 1/z - a lies in the image iff z = 1/(w+a) lies in the shape.
  // Box side Re(1/u) < 1/2 etc. excludes closed disks at (+-1, +-i) - a;
  // a corner disk at c excludes the disk at conj(c) - a; an edge disk at c
  // becomes the half-plane Re(c (w+a)) < 1/2, which misses the open box
  // entirely once Re(c a) >= 1.
  std::vector<std::pair<long, long>> cand;
  const Centre units[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (const auto& g : units) cand.emplace_back(g.re - ar, g.im - ai);
  for (const auto& c : shape.centres()) {
    if (is_corner(c)) {
      cand.emplace_back(c.re - ar, -c.im - ai);
    } else {
      const long t = c.re * ar - c.im * ai;  // Re(c a)
      if (t >= 1) return {std::nullopt, t == 1};
    }
  }
  std::vector<Centre> kept;
  for (const auto& [re, im] : cand) {
    if (re == 0 && im == 0) return {std::nullopt, false};  // D(0) covers the box
    if (in_n8(static_cast<int>(re), static_cast<int>(im))) kept.push_back({static_cast<int>(re), static_cast<int>(im)});
  }
  kept = sorted(kept);
  const auto has = [&](int re, int im) {
    return std::find(kept.begin(), kept.end(), Centre{re, im}) != kept.end();
  };
  // Inside the box a corner disk is covered by either adjacent edge disk.
  std::vector<Centre> reduced;
  for (const auto& c : kept) {
    if (is_corner(c) && (has(c.re, 0) || has(0, c.im))) continue;
    reduced.push_back(c);
  }
  const int edges = static_cast<int>(std::count_if(reduced.begin(), reduced.end(),
                                                   [](const Centre& c) { return !is_corner(c); }));
  if (edges == 4) return {std::nullopt, true};  // only the point 0 is left
  for (const auto& s : FeasibleShape::catalogue()) {
    if (s.centres() == reduced) return {s, false};
  }
  std::string desc;
  for (const auto& c : reduced) desc += " (" + std::to_string(c.re) + "," + std::to_string(c.im) + ")";
  throw UnclassifiableShape("transition from " + shape.name() + " by " + a.to_string() +
                            " excludes disks at" + desc);
}

namespace {

int clamp_component(long v) { return static_cast<int>(std::clamp<long>(v, -2, 2)); }

// Memo key: 0..n for small digits, offset classes for large ones.
struct DigitKey {
  bool large;
  int re;
  int im;
  auto operator<=>(const DigitKey&) const = default;
};

DigitKey key_of(const GaussianInt& a) {
  const long ar = small(a.re);
  const long ai = small(a.im);
  if (ar * ar + ai * ai <= 8) return {false, static_cast<int>(ar), static_cast<int>(ai)};
  return {true, clamp_component(ar), clamp_component(ai)};
}

// A digit with |a|^2 > 8 in the given class.
GaussianInt representative(const DigitKey& k) {
  const auto rep = [](int v) { return std::abs(v) == 2 ? 3 * (v > 0 ? 1 : -1) : v; };
  return {rep(k.re), rep(k.im)};
}

std::vector<DigitKey> all_keys() {
  std::vector<DigitKey> keys;
  for (int re = -2; re <= 2; ++re) {
    for (int im = -2; im <= 2; ++im) {
      const int n = re * re + im * im;
      if (n >= 2 && n <= 8) keys.push_back({false, re, im});
    }
  }
  for (int re = -2; re <= 2; ++re) {
    for (int im = -2; im <= 2; ++im) {
      if (std::abs(re) == 2 || std::abs(im) == 2) keys.push_back({true, re, im});
    }
  }
  return keys;
}

struct MemoTable {
  std::map<std::pair<int, DigitKey>, Transition> table;
  MemoTable() {
    for (const auto& s : FeasibleShape::catalogue()) {
      for (const auto& k : all_keys()) {
        const GaussianInt a = k.large ? representative(k) : GaussianInt(k.re, k.im);
        table.emplace(std::make_pair(s.index(), k), digit_transition_direct(s, a));
      }
    }
  }
};

const MemoTable& memo() {
  static const MemoTable m;
  return m;
}

std::string class_name(const DigitKey& k) {
  if (!k.large) return GaussianInt(k.re, k.im).to_string();
  const auto part = [](int v) -> std::string {
    if (v <= -2) return "<=-2";
    if (v >= 2) return ">=2";
    return std::to_string(v);
  };
  return "large(re" + part(k.re) + ",im" + part(k.im) + ")";
}

}  // namespace

Transition digit_transition(const FeasibleShape& shape, const GaussianInt& a) {
  if (a.norm() < 2) throw PreconditionViolation("digit " + a.to_string() + " is not in I");
  const auto it = memo().table.find({shape.index(), key_of(a)});
  return it->second;
}

std::string digit_class(const GaussianInt& a) { return class_name(key_of(a)); }

nlohmann::ordered_json transition_table_json() {
  nlohmann::ordered_json out;
  auto shapes = nlohmann::ordered_json::array();
  for (const auto& s : FeasibleShape::catalogue()) {
    nlohmann::ordered_json row;
    row["shape"] = s.name();
    auto centres = nlohmann::ordered_json::array();
    for (const auto& c : s.centres()) centres.push_back(GaussianInt(c.re, c.im).to_string());
    row["excluded_disk_centres"] = std::move(centres);
    nlohmann::ordered_json trans;
    for (const auto& k : all_keys()) {
      const Transition& t = memo().table.at({s.index(), k});
      if (t.empty()) {
        trans[class_name(k)] = t.degenerate ? nlohmann::ordered_json("empty(degenerate)")
                                            : nlohmann::ordered_json(nullptr);
      } else {
        trans[class_name(k)] = t.shape->name();
      }
    }
    row["transitions"] = std::move(trans);
    shapes.push_back(std::move(row));
  }
  out["shapes"] = std::move(shapes);
  return out;
}

NormFilter NormFilter::euclid(double L, double M) {
  if (!(L > 0) || !(M >= L)) throw PreconditionViolation("need 0 < L <= M");
  return {Norm::kEuclid, static_cast<std::int64_t>(std::ceil(L * L)),
          static_cast<std::int64_t>(std::floor(M * M))};
}

NormFilter NormFilter::sup(double lo, double hi) {
  if (!(lo > 0) || !(hi >= lo)) throw PreconditionViolation("need 0 < f <= g");
  return {Norm::kSup, static_cast<std::int64_t>(std::ceil(lo)), static_cast<std::int64_t>(std::floor(hi))};
}

std::vector<GaussianInt> valid_digits(const FeasibleShape& shape, const NormFilter& filter) {
  const auto pts = filter.norm == NormFilter::Norm::kEuclid ? enumerate_annulus(filter.lo, filter.hi)
                                                            : enumerate_sup_annulus(filter.lo, filter.hi);
  std::vector<GaussianInt> out;
  for (const auto& p : pts) {
    if (p.norm < 2) continue;
    const GaussianInt a(p.re, p.im);
    if (!digit_transition(shape, a).empty()) out.push_back(a);
  }
  return out;
}

bool admissible(std::span<const GaussianInt> digits) {
  FeasibleShape s = FeasibleShape::full();
  for (const auto& a : digits) {
    if (a.norm() < 2) return false;
    const Transition t = digit_transition(s, a);
    if (t.empty()) return false;
    s = *t.shape;
  }
  return true;
}

CylinderNode make_cylinder(std::span<const GaussianInt> digits) {
  CylinderNode node;
  node.digits.assign(digits.begin(), digits.end());
  FeasibleShape s = FeasibleShape::full();
  for (const auto& a : digits) {
    if (a.norm() < 2) throw PreconditionViolation("digit " + a.to_string() + " is not in I");
    const Transition t = digit_transition(s, a);
    if (t.empty()) throw PreconditionViolation("digit string is not admissible at " + a.to_string());
    s = *t.shape;
    node.q_pair = node.q_pair.advance(a);
  }
  node.shape = s;
  const double n = node.q_pair.q.norm().get_d();
  node.diam_lower = constants().gamma / n;
  node.diam_upper = 2.0 / n;
  return node;
}

DiameterBounds cylinder_diameter_bounds(const CylinderNode& node) {
  for (const auto& a : node.digits) {
    if (a.norm() < 8) {
      throw LowerBoundInapplicable("digit " + a.to_string() + " has |a| < sqrt8");
    }
  }
  return {node.diam_lower, node.diam_upper};
}

double witness_distance(const GaussianInt& q_prev, const GaussianInt& q) {
  const auto& c = constants();
  const double xr = c.xi.re().to_double();
  const double xi = c.xi.im().to_double();
  const double qr = q.re.get_d();
  const double qi = q.im.get_d();
  const double pr = q_prev.re.get_d();
  const double pi = q_prev.im.get_d();
  const double ar = xr * qr - xi * qi;
  const double ai = xr * qi + xi * qr;
  const double plus = std::hypot(ar + pr, ai + pi);
  const double minus = std::hypot(ar - pr, ai - pi);
  return 2.0 * c.abs_xi_d / (plus * minus);
}

}  // namespace hurwitz
