#include "hurwitz/digit_sets.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hurwitz/constants.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/kernels.hpp"
#include "hurwitz/lattice.hpp"

namespace hurwitz {
namespace {

__extension__ using i128 = __int128;

constexpr std::size_t kChunk = 32;
// Relative slack applied to closed-form lower bounds evaluated in double.
constexpr double kShrink = 1.0 - 1e-12;

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

std::string gauss(std::int64_t re, std::int64_t im) { return GaussianInt(re, im).to_string(); }

std::int64_t checked(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw PreconditionViolation("Q-pair entry overflows 64 bits; reduce the depth");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Schedule linear_schedule() {
  return {"f(n)=n+3,g(n)=10(n+3)", [](long n) { return static_cast<double>(n) + 3.0; },
          [](long n) { return 10.0 * (static_cast<double>(n) + 3.0); }, 0.1};
}

DigitFilter DigitFilter::annulus(double L, double M) {
  const NormFilter nf = NormFilter::euclid(L, M);
  DigitFilter f = annulus_sq(nf.lo, nf.hi);
  f.L = L;
  f.M = M;
  return f;
}

DigitFilter DigitFilter::annulus_sq(std::int64_t lo_sq, std::int64_t hi_sq) {
  DigitFilter f;
  f.kind = Kind::kAnnulusConstant;
  f.lo_sq = lo_sq;
  f.hi_sq = hi_sq;
  f.L = std::sqrt(static_cast<double>(lo_sq));
  f.M = std::sqrt(static_cast<double>(hi_sq));
  return f;
}

DigitFilter DigitFilter::lower(double L, std::size_t window) {
  DigitFilter f;
  f.kind = Kind::kAnnulusLower;
  f.lo_sq = static_cast<std::int64_t>(std::ceil(L * L));
  f.hi_sq = 0;
  f.L = L;
  f.M = std::numeric_limits<double>::infinity();
  f.window = window;
  return f;
}

DigitFilter DigitFilter::sup_schedule(Schedule s) {
  DigitFilter f;
  f.kind = Kind::kSupNormSchedule;
  f.schedule = std::move(s);
  return f;
}

std::string DigitFilter::describe() const {
  switch (kind) {
    case Kind::kAnnulusConstant:
      return "E_L^M(L=" + fmt(L) + ",M=" + fmt(M) + ")";
    case Kind::kAnnulusLower:
      return "E_L(L=" + fmt(L) + ",window=" + std::to_string(window) + ")";
    case Kind::kSupNormSchedule:
      return "E_fg(" + schedule.name + ")";
  }
  return "unknown";
}

HcfTreeFamily::HcfTreeFamily(DigitFilter filter, DiameterChoice choice)
    : filter_(std::move(filter)), choice_(choice) {
  const auto& c = constants();
  gamma_ = c.gamma;
  k_sep_ = c.k_sep;
  rho_ = c.rho;
  xi_re_ = c.xi.re().to_double();
  xi_im_ = c.xi.im().to_double();
  abs_xi_ = c.abs_xi_d;
  scale_ = choice_ == DiameterChoice::kSandwich ? 0.5 : 1.0;
  c3_ = k_sep_ / (2.0 * std::pow(std::numbers::sqrt2 + (1.0 + rho_) / std::sqrt(8.0), 2));

  if (filter_.kind == DigitFilter::Kind::kSupNormSchedule) {
    if (!filter_.schedule.f || !filter_.schedule.g) throw PreconditionViolation("schedule needs f and g");
    for (long n = 1; n <= 64; ++n) {
      if (std::ceil(filter_.schedule.f(n)) < 3.0) {
        throw FilterTooWeak("schedule allows digits with sup norm below 3 at n = " + std::to_string(n));
      }
      if (filter_.schedule.g(n) < filter_.schedule.f(n)) throw PreconditionViolation("schedule needs f <= g");
    }
    levels_ = std::make_unique<std::atomic<Level*>[]>(kMaxLevels + 1);
    for (int i = 0; i <= kMaxLevels; ++i) levels_[i].store(nullptr);
    mutex_ = std::make_unique<std::mutex>();
  } else {
    if (filter_.lo_sq < 8) {
      throw FilterTooWeak("L = " + fmt(filter_.L) + " is below sqrt8; the lower diameter bound is unavailable");
    }
    if (filter_.kind == DigitFilter::Kind::kAnnulusConstant && filter_.hi_sq < filter_.lo_sq) {
      throw PreconditionViolation("need L <= M");
    }
    shared_ = std::make_unique<Level>(build_level(1));
  }
}

HcfTreeFamily::Level HcfTreeFamily::build_level(int n) const {
  Level lv;
  std::vector<GaussianInt> digits;
  switch (filter_.kind) {
    case DigitFilter::Kind::kAnnulusConstant:
      digits = valid_digits(FeasibleShape::full(), NormFilter::euclid_sq(filter_.lo_sq, filter_.hi_sq));
      break;
    case DigitFilter::Kind::kAnnulusLower: {
      const auto pts = smallest_points(filter_.lo_sq, filter_.window);
      for (const auto& p : pts) digits.emplace_back(p.re, p.im);
      lv.next_norm = pts.back().norm + 1;
      break;
    }
    case DigitFilter::Kind::kSupNormSchedule:
      digits = valid_digits(FeasibleShape::full(), NormFilter::sup(filter_.schedule.f(n), filter_.schedule.g(n)));
      break;
  }
  if (digits.empty()) throw PreconditionViolation("digit filter admits no digits at level " + std::to_string(n));
  lv.min_abs = std::numeric_limits<double>::infinity();
  for (const auto& a : digits) {
    const std::int64_t re = a.re.get_si();
    const std::int64_t im = a.im.get_si();
    lv.ire.push_back(re);
    lv.iim.push_back(im);
    lv.re.push_back(static_cast<double>(re));
    lv.im.push_back(static_cast<double>(im));
    const double r = std::sqrt(static_cast<double>(re * re + im * im));
    lv.min_abs = std::min(lv.min_abs, r);
    if (r >= lv.max_abs) {
      lv.second_abs = lv.max_abs;
      lv.max_abs = r;
    } else {
      lv.second_abs = std::max(lv.second_abs, r);
    }
    lv.max_component = std::max({lv.max_component, std::fabs(static_cast<double>(re)), std::fabs(static_cast<double>(im))});
  }
  if (digits.size() == 1) lv.second_abs = lv.max_abs;
  return lv;
}

const HcfTreeFamily::Level& HcfTreeFamily::level(int n) const {
  if (n < 1) throw PreconditionViolation("digit levels start at 1");
  if (shared_) return *shared_;
  if (n > kMaxLevels) throw PreconditionViolation("schedule depth limit exceeded");
  if (Level* p = levels_[n].load(std::memory_order_acquire)) return *p;
  std::lock_guard<std::mutex> lock(*mutex_);
  if (Level* p = levels_[n].load(std::memory_order_acquire)) return *p;
  owned_.push_back(std::make_unique<Level>(build_level(n)));
  levels_[n].store(owned_.back().get(), std::memory_order_release);
  return *owned_.back();
}

std::vector<GaussianInt> HcfTreeFamily::level_digits(int n) const {
  const Level& lv = level(n);
  std::vector<GaussianInt> out;
  for (std::size_t i = 0; i < lv.ire.size(); ++i) out.emplace_back(lv.ire[i], lv.iim[i]);
  return out;
}

std::size_t HcfTreeFamily::level_size(int n) const { return level(n).ire.size(); }

namespace {

double witness(double xr, double xi, double abs_xi, double pr, double pi, double qr, double qi) {
  const double ar = xr * qr - xi * qi;
  const double ai = xr * qi + xi * qr;
  return 2.0 * abs_xi / (std::hypot(ar + pr, ai + pi) * std::hypot(ar - pr, ai - pi));
}

}  // namespace

Bounds HcfTreeFamily::bounds(const Node& n) const {
  const double qr = static_cast<double>(n.q_re);
  const double qi = static_cast<double>(n.q_im);
  if (choice_ == DiameterChoice::kWitness) {
    const double w = scale_ * witness(xi_re_, xi_im_, abs_xi_, static_cast<double>(n.qp_re),
                                      static_cast<double>(n.qp_im), qr, qi);
    return {w, w};
  }
  const double norm = qr * qr + qi * qi;
  return {scale_ * gamma_ / norm, scale_ * 2.0 / norm};
}

void HcfTreeFamily::descendants(const Node& n, std::vector<Node>& out) const {
  const Level& lv = level(n.depth + 1);
  out.clear();
  out.reserve(lv.ire.size());
  for (std::size_t i = 0; i < lv.ire.size(); ++i) {
    const i128 br = lv.ire[i];
    const i128 bi = lv.iim[i];
    const std::int64_t re = checked(br * n.q_re - bi * n.q_im + n.qp_re);
    const std::int64_t im = checked(br * n.q_im + bi * n.q_re + n.qp_im);
    out.push_back({n.depth + 1, n.q_re, n.q_im, re, im});
  }
}

std::optional<double> HcfTreeFamily::separation(int n) const {
  switch (filter_.kind) {
    case DigitFilter::Kind::kAnnulusConstant: {
      const double M = std::sqrt(static_cast<double>(filter_.hi_sq));
      return k_sep_ / (2.0 * (M + rho_ + 1.0) * (M + rho_ + 1.0));
    }
    case DigitFilter::Kind::kAnnulusLower:
      return std::nullopt;
    case DigitFilter::Kind::kSupNormSchedule: {
      const double g = filter_.schedule.g(n + 1);
      return c3_ / (g * g);
    }
  }
  return std::nullopt;
}

double HcfTreeFamily::sibling_gap(const Node& n) const {
  const Level& lv = level(n.depth + 1);
  if (lv.ire.size() < 2) return std::numeric_limits<double>::infinity();
  const double qr = static_cast<double>(n.q_re);
  const double qi = static_cast<double>(n.q_im);
  const double norm = qr * qr + qi * qi;
  const double r = std::hypot(static_cast<double>(n.qp_re), static_cast<double>(n.qp_im)) / std::sqrt(norm);
  // Children b, c have tails x = b + alpha, y = c + beta with |alpha|,|beta| <= rho
  // and |x - y| >= k; v contracts by 1/(|q|^2 |x + r| |y + r|).
  const double g = k_sep_ / (norm * (lv.max_abs + rho_ + r) * (lv.second_abs + rho_ + r));
  return scale_ * g * kShrink;
}

std::string HcfTreeFamily::describe(const Node& n) const {
  return "depth=" + std::to_string(n.depth) + " q_prev=" + gauss(n.qp_re, n.qp_im) + " q=" + gauss(n.q_re, n.q_im);
}

std::string HcfTreeFamily::name() const {
  return filter_.describe() + (choice_ == DiameterChoice::kWitness ? "[witness]" : "[sandwich]");
}

DescendantSum HcfTreeFamily::descendant_sum(const Node& n, double s, SumKind kind, double stop_at) const {
  const Level& lv = level(n.depth + 1);
  const std::size_t count = lv.ire.size();
  const double qr = static_cast<double>(n.q_re);
  const double qi = static_cast<double>(n.q_im);
  const double pr = static_cast<double>(n.qp_re);
  const double pi = static_cast<double>(n.qp_im);
  const double norm = qr * qr + qi * qi;
  const double r = std::hypot(pr, pi) / std::sqrt(norm);

  DescendantSum out;
  const double m = lv.min_abs - r;
  out.max_diam = scale_ * 2.0 / (norm * m * m) / kShrink;

  if (choice_ == DiameterChoice::kWitness) {
    for (std::size_t i = 0; i < count; ++i) {
      const double cr = lv.re[i] * qr - lv.im[i] * qi + pr;
      const double ci = lv.re[i] * qi + lv.im[i] * qr + pi;
      out.sum += std::pow(scale_ * witness(xi_re_, xi_im_, abs_xi_, qr, qi, cr, ci), s);
      ++out.count;
      if (out.sum >= stop_at && out.count < count) {
        out.complete = false;
        break;
      }
    }
    return out;
  }

  const double c = scale_ * (kind == SumKind::kLower ? gamma_ : 2.0);
  const double factor = std::pow(c, s);
  const bool exact = kernels::child_norms_exact_in_double(pr, pi, qr, qi, lv.max_component);
  double logs[kChunk];
  for (std::size_t start = 0; start < count; start += kChunk) {
    const std::size_t len = std::min(kChunk, count - start);
    if (exact) {
      kernels::child_log_norms(pr, pi, qr, qi, std::span<const double>(lv.re.data() + start, len),
                               std::span<const double>(lv.im.data() + start, len), std::span<double>(logs, len));
    } else {
      for (std::size_t i = 0; i < len; ++i) {
        const i128 br = lv.ire[start + i];
        const i128 bi = lv.iim[start + i];
        const i128 re = br * n.q_re - bi * n.q_im + n.qp_re;
        const i128 im = br * n.q_im + bi * n.q_re + n.qp_im;
        logs[i] = std::log(static_cast<double>(re * re + im * im));
      }
    }
    out.sum += factor * kernels::sum_exp_scaled(std::span<const double>(logs, len), -s);
    out.count += len;
    if (out.sum >= stop_at && out.count < count) {
      out.complete = false;
      break;
    }
  }
  return out;
}

std::optional<double> HcfTreeFamily::tail_bound(const Node& n, double s) const {
  if (filter_.kind != DigitFilter::Kind::kAnnulusLower) return 0.0;
  const Level& lv = level(n.depth + 1);
  const double qr = static_cast<double>(n.q_re);
  const double qi = static_cast<double>(n.q_im);
  const double norm = qr * qr + qi * qi;
  const double r = std::hypot(static_cast<double>(n.qp_re), static_cast<double>(n.qp_im)) / std::sqrt(norm);
  const double t = 2.0 * s;
  if (t <= 2.0) return std::numeric_limits<double>::infinity();
  // Omitted children have |b|^2 >= next_norm; each contributes at most
  // (scale 2 / (|q|^2 (|b| - |r|)^2))^s (witness diameters are smaller).
  const double R = std::sqrt(static_cast<double>(lv.next_norm)) * kShrink;
  const double factor = std::pow(scale_ * 2.0 / norm, s);
  return factor * tail_power_bound(R, r / kShrink, t);
}

nlohmann::ordered_json HcfTreeFamily::info_json() const {
  nlohmann::ordered_json j;
  j["family"] = name();
  j["diameters"] = choice_ == DiameterChoice::kSandwich ? "sandwich" : "witness";
  j["rigour"] = choice_ == DiameterChoice::kSandwich ? "certified diameter bounds" : "estimate (witness distances stand in for diameters)";
  j["scale"] = scale_;
  j["gamma"] = gamma_;
  j["k_sep"] = k_sep_;
  j["rho"] = rho_;
  switch (filter_.kind) {
    case DigitFilter::Kind::kAnnulusConstant: {
      const double M = std::sqrt(static_cast<double>(filter_.hi_sq));
      j["digits_per_level"] = level_size(1);
      j["count_at_least_M_squared"] = static_cast<double>(level_size(1)) >= M * M;
      j["B_n"] = *separation(0);
      break;
    }
    case DigitFilter::Kind::kAnnulusLower:
      j["window_digits"] = level_size(1);
      j["window_next_norm"] = level(1).next_norm;
      j["tail"] = "sum_{|b|^2 >= next_norm} (|b| - |r|)^(-2s) via annulus counts pi(1+sqrt2)(2r+1)";
      break;
    case DigitFilter::Kind::kSupNormSchedule:
      j["c3"] = c3_;
      j["digits_level_1"] = level_size(1);
      break;
  }
  return j;
}

HcfTreeFamily build_family(const DigitFilter& filter, DiameterChoice choice) { return HcfTreeFamily(filter, choice); }

double lower_exponent_closed_form(double M, double gamma) {
  if (!(M > 1.0)) throw PreconditionViolation("M must exceed 1");
  if (!(gamma > 0.0 && gamma <= 2.0)) throw PreconditionViolation("gamma must lie in (0, 2]");
  const double lm = 2.0 * std::log(M);
  return lm / (lm + 2.0 * std::log1p(1.0 / M) - std::log(gamma / 2.0));
}

UpperThreshold upper_exponent_threshold(double epsilon, double gamma) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionViolation("epsilon must lie in (0, 1)");
  UpperThreshold u{};
  u.epsilon = epsilon;
  u.c_T = lattice_tail_constant(epsilon);
  // Children of A: |B| <= 2/(|q|^2 |b+r|^2) with |b+r| >= |b|/2, so
  // sum |B|^(1+eps) <= (8/|q|^2)^(1+eps) c_T L^(-2eps) = c2 L^(-2eps) (gamma/|q|^2)^(1+eps).
  u.c2 = std::pow(2.0, 3.0 + 3.0 * epsilon) * u.c_T / std::pow(gamma, 1.0 + epsilon);
  u.L_min = std::max(std::pow(u.c2, 1.0 / (2.0 * epsilon)) * (1.0 + 1e-12), std::nextafter(2.0, 3.0));
  return u;
}

std::vector<TailCheckRow> tail_constant_check(double epsilon, std::span<const double> Ls, double R) {
  const double t = 2.0 + 2.0 * epsilon;
  const double cT = lattice_tail_constant(epsilon);
  const auto max_norm = static_cast<std::int64_t>(std::floor(R * R));
  const double rem = tail_power_bound(std::sqrt(static_cast<double>(max_norm + 1)), 0.0, t);
  std::vector<TailCheckRow> rows;
  for (double L : Ls) {
    if (!(L >= 2.0 && L <= R)) throw PreconditionViolation("tail check needs 2 <= L <= R");
    TailCheckRow r;
    r.L = L;
    r.direct = kernels::lattice_power_sum(static_cast<std::int64_t>(std::ceil(L * L)), max_norm, t);
    r.remainder = rem;
    r.bound = cT * std::pow(L, -2.0 * epsilon);
    r.margin = 1.0 - (r.direct + r.remainder) / r.bound;
    rows.push_back(r);
  }
  return rows;
}

ScheduleEvaluation schedule_condition(const Schedule& sch, double s, long n, double gamma) {
  if (n < 1) throw PreconditionViolation("n must be positive");
  ScheduleEvaluation e;
  e.n = n;
  e.f = sch.f(n + 1);
  e.g = sch.g(n + 1);
  e.c5 = 3.0 * std::pow(2.0, -s);
  e.applicable = e.f <= sch.c_prime * e.g * (1.0 + 1e-12) && e.g - e.f >= 4.0 && sch.c_prime > 0 && sch.c_prime < 1;
  const double lg = 2.0 * std::log(e.g);
  const double num = lg + std::log1p(-(e.f * e.f) / (e.g * e.g)) + std::log(e.c5);
  const double den = lg + 2.0 * std::log1p(1.0 / e.g) - std::log(gamma / 2.0);
  e.ratio = num / den;
  e.margin = e.ratio - s;
  e.satisfied = e.applicable && e.ratio > s;
  return e;
}

ScheduleScan schedule_scan(const Schedule& sch, double s, long n_max, double gamma) {
  ScheduleScan scan;
  scan.s = s;
  scan.n_max = n_max;
  for (long n = 1; n <= n_max; ++n) scan.rows.push_back(schedule_condition(sch, s, n, gamma));
  for (std::size_t i = 1; i < scan.rows.size(); ++i) {
    if (!(scan.rows[i].ratio > scan.rows[i - 1].ratio)) scan.ratio_increasing = false;
  }
  for (long i = static_cast<long>(scan.rows.size()) - 1; i >= 0; --i) {
    if (!scan.rows[static_cast<std::size_t>(i)].satisfied) break;
    scan.N = scan.rows[static_cast<std::size_t>(i)].n;
  }
  return scan;
}

PrefixedCheck prefixed_lambda_check(std::span<const GaussianInt> prefix, const DigitFilter& base, double s,
                                    int depth) {
  if (base.kind != DigitFilter::Kind::kAnnulusConstant) {
    throw PreconditionViolation("prefixed check needs an AnnulusConstant base filter");
  }
  if (base.lo_sq < 8) throw FilterTooWeak("base filter needs L >= sqrt8");
  if (depth < 1) throw PreconditionViolation("depth must be >= 1");
  const CylinderNode pre = make_cylinder(prefix);
  const QPair& qp = pre.q_pair;

  PrefixedCheck out;
  out.prefix.assign(prefix.begin(), prefix.end());
  out.s = s;
  const double aq = std::sqrt(qp.q.norm().get_d());
  const double ap = std::sqrt(qp.q_prev.norm().get_d());
  // |v'(z)| = 1/|q_{n-1} z + q_n|^2 and |z| <= 1/sqrt2 on the fundamental domain.
  out.lo = std::pow(1.0 / std::pow(aq + ap / std::numbers::sqrt2, 2), s);
  out.hi = std::pow(1.0 / std::pow(aq - ap / std::numbers::sqrt2, 2), s);

  const auto digits = valid_digits(FeasibleShape::full(), NormFilter::euclid_sq(base.lo_sq, base.hi_sq));
  std::vector<GaussianInt> first;
  for (const auto& a : digits) {
    if (!digit_transition(pre.shape, a).empty()) first.push_back(a);
  }
  const auto w = [](const QPair& q) { return witness_distance(q.q_prev, q.q); };

  // Frontier of (base Q-pair, image Q-pair).
  std::vector<std::pair<QPair, QPair>> frontier{{QPair{}, qp}};
  out.passed = true;
  for (int j = 0; j <= depth; ++j) {
    PrefixedStage st;
    st.depth = j;
    for (const auto& [b, im] : frontier) {
      st.lambda_base += std::pow(w(b), s);
      st.lambda_image += std::pow(w(im), s);
    }
    st.ratio = st.lambda_image / st.lambda_base;
    st.within = st.ratio >= out.lo * (1.0 - 1e-12) && st.ratio <= out.hi * (1.0 + 1e-12);
    out.passed = out.passed && st.within;
    out.stages.push_back(st);
    if (j == depth) break;
    const auto& next_digits = j == 0 ? first : digits;
    std::vector<std::pair<QPair, QPair>> next;
    next.reserve(frontier.size() * next_digits.size());
    for (const auto& [b, im] : frontier) {
      for (const auto& a : next_digits) next.emplace_back(b.advance(a), im.advance(a));
    }
    frontier = std::move(next);
  }
  return out;
}

nlohmann::ordered_json schedule_scan_to_json(const ScheduleScan& scan, std::size_t max_rows) {
  nlohmann::ordered_json j;
  j["s"] = scan.s;
  j["n_max"] = scan.n_max;
  j["N"] = scan.N ? nlohmann::ordered_json(*scan.N) : nlohmann::ordered_json(nullptr);
  j["ratio_increasing"] = scan.ratio_increasing;
  j["ratio_at_n_max"] = scan.rows.empty() ? 0.0 : scan.rows.back().ratio;
  auto rows = nlohmann::ordered_json::array();
  const std::size_t total = scan.rows.size();
  const std::size_t stride = (max_rows == 0 || total <= max_rows) ? 1 : (total + max_rows - 1) / max_rows;
  for (std::size_t i = 0; i < total; ++i) {
    const bool keep = i % stride == 0 || i + 1 == total || (scan.N && scan.rows[i].n == *scan.N);
    if (!keep) continue;
    const auto& r = scan.rows[i];
    nlohmann::ordered_json x;
    x["n"] = r.n;
    x["f"] = r.f;
    x["g"] = r.g;
    x["ratio"] = r.ratio;
    x["margin"] = r.margin;
    x["applicable"] = r.applicable;
    x["satisfied"] = r.satisfied;
    rows.push_back(std::move(x));
  }
  j["rows"] = std::move(rows);
  return j;
}

nlohmann::ordered_json prefixed_check_to_json(const PrefixedCheck& c) {
  nlohmann::ordered_json j;
  auto pre = nlohmann::ordered_json::array();
  for (const auto& a : c.prefix) pre.push_back(a.to_string());
  j["prefix"] = std::move(pre);
  j["s"] = c.s;
  j["ratio_lower"] = c.lo;
  j["ratio_upper"] = c.hi;
  auto stages = nlohmann::ordered_json::array();
  for (const auto& st : c.stages) {
    nlohmann::ordered_json x;
    x["depth"] = st.depth;
    x["lambda_base"] = st.lambda_base;
    x["lambda_image"] = st.lambda_image;
    x["ratio"] = st.ratio;
    x["within"] = st.within;
    stages.push_back(std::move(x));
  }
  j["stages"] = std::move(stages);
  j["passed"] = c.passed;
  return j;
}

}  // namespace hurwitz
