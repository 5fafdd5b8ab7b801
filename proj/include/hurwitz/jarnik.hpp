#pragma once

// Finite-depth checks of the descendant-sum conditions for diametrically
// strongly tree-like families, and a bisection for the critical exponent.
//
// A family is walked depth first. Work below the root is split by the root's
// children and merged in child order, so results do not depend on the thread
// count.

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz {

struct Bounds {
  double lower;
  double upper;
};

enum class SumKind { kLower, kUpper };

struct DescendantSum {
  double sum = 0.0;       // sum of chosen descendant diameters to the power s
  double max_diam = 0.0;  // upper bound on every descendant's upper diameter
  std::size_t count = 0;  // terms added
  bool complete = true;   // false when the sum stopped early at stop_at
};

template <class F>
concept TreeFamily = requires(const F& f, const typename F::Node& n, std::vector<typename F::Node>& out,
                              int level) {
  { f.root() } -> std::same_as<typename F::Node>;
  { f.depth(n) } -> std::convertible_to<int>;
  { f.bounds(n) } -> std::same_as<Bounds>;
  f.descendants(n, out);
  { f.separation(level) } -> std::same_as<std::optional<double>>;
  { f.sibling_gap(n) } -> std::convertible_to<double>;
  { f.describe(n) } -> std::convertible_to<std::string>;
  { f.finite_descendants() } -> std::convertible_to<bool>;
  { f.ambient_dimension() } -> std::convertible_to<double>;
  { f.name() } -> std::convertible_to<std::string>;
};

// Sum of omitted descendants' upper diameters to the power s.
template <class F>
concept HasTailBound = requires(const F& f, const typename F::Node& n, double s) {
  { f.tail_bound(n, s) } -> std::same_as<std::optional<double>>;
};

template <class F>
concept HasDescendantSum = requires(const F& f, const typename F::Node& n, double s, SumKind k, double stop) {
  { f.descendant_sum(n, s, k, stop) } -> std::same_as<DescendantSum>;
};

enum class SumPolicy { kExhaustive, kEarlyExit };

struct CheckOptions {
  int depth = 1;       // stages 0..depth are unfolded
  int from_depth = 0;  // parents at depths from_depth..depth-1 are checked
  SumPolicy policy = SumPolicy::kExhaustive;
  unsigned threads = 0;  // 0: hardware concurrency
  double tie_tolerance = 1e-12;
};

struct Condition {
  std::string name;
  bool satisfied = true;
  double margin = std::numeric_limits<double>::infinity();
  std::string margin_kind = "exact";  // "exact", "lower_bound", "finite_depth_evidence"
  std::string witness;
};

struct StageStat {
  int depth = 0;
  double d_n = 0.0;                 // stage diameter (max upper diameter, or a bound on it)
  std::optional<double> lambda;     // Lambda_s over the enumerated stage
  std::optional<double> separation; // B_n
};

struct DimensionCertificate {
  enum class Kind { kLowerBound, kUpperBound };
  Kind kind = Kind::kLowerBound;
  std::string family;
  double s = 0.0;
  int depth_checked = 0;
  int from_depth = 0;
  std::size_t nodes_checked = 0;
  std::vector<Condition> conditions;
  std::vector<StageStat> stages;
  std::vector<std::pair<long, double>> separation_growth;  // (n, log log(1/B_n)/log n)
};

struct CheckFailure {
  DimensionCertificate::Kind kind = DimensionCertificate::Kind::kLowerBound;
  std::string family;
  double s = 0.0;
  std::string condition;
  std::string node;
  int node_depth = 0;
  double margin = 0.0;
};

using CheckResult = std::variant<DimensionCertificate, CheckFailure>;

inline bool passed(const CheckResult& r) { return std::holds_alternative<DimensionCertificate>(r); }

// Sum of d^s over a finite stage. Throws PreconditionViolation when empty.
double lambda_sum(std::span<const double> diameters, double s);

nlohmann::ordered_json certificate_to_json(const DimensionCertificate& c);
nlohmann::ordered_json failure_to_json(const CheckFailure& f);
nlohmann::ordered_json result_to_json(const CheckResult& r);
// depth,lambda rows.
std::string lambda_csv(const DimensionCertificate& c);
std::string kind_name(DimensionCertificate::Kind k);

// Evidence for the separation growth requirement: statistic values on
// n = 2, 4, ..., 2^20 and whether the tail of that grid stays below 1.
template <class F>
Condition separation_growth_condition(const F& family, std::vector<std::pair<long, double>>& grid) {
  Condition c{"separation_growth", true, 0.0, "finite_depth_evidence", {}};
  grid.clear();
  for (int k = 1; k <= 20; ++k) {
    const long n = 1L << k;
    const auto b = family.separation(static_cast<int>(std::min<long>(n, std::numeric_limits<int>::max())));
    if (!b) throw PreconditionViolation("family provides no separation data");
    const double inv = std::log(1.0 / *b);
    const double stat = inv > 1.0 ? std::log(inv) / std::log(static_cast<double>(n))
                                   : -std::numeric_limits<double>::infinity();
    grid.emplace_back(n, stat);
  }
  double tail = -std::numeric_limits<double>::infinity();
  for (std::size_t i = grid.size() - 5; i < grid.size(); ++i) tail = std::max(tail, grid[i].second);
  c.margin = 1.0 - tail;
  c.satisfied = tail < 1.0;
  c.witness = "max of log log(1/B_n)/log n over n in [2^16, 2^20]";
  return c;
}

namespace detail {

enum class Mode { kLower, kUpper };

struct MinTrack {
  double margin = std::numeric_limits<double>::infinity();
  std::string witness;
  // describe is only called when the margin improves.
  template <class Describe>
  void offer(double m, Describe&& describe) {
    if (m < margin) {
      margin = m;
      witness = describe();
    }
  }
};

struct Partial {
  std::vector<double> d;       // per stage
  std::vector<double> lambda;  // per stage (upper mode)
  MinTrack sum;
  MinTrack sep;
  bool sum_is_lower_bound = false;
  std::size_t nodes = 0;
  std::optional<CheckFailure> failure;
};

template <TreeFamily F>
DescendantSum sum_descendants(const F& f, const typename F::Node& a, double s, SumKind kind, double stop_at) {
  if constexpr (HasDescendantSum<F>) {
    return f.descendant_sum(a, s, kind, stop_at);
  } else {
    std::vector<typename F::Node> kids;
    f.descendants(a, kids);
    DescendantSum out;
    for (const auto& k : kids) {
      const Bounds b = f.bounds(k);
      out.max_diam = std::max(out.max_diam, b.upper);
    }
    for (const auto& k : kids) {
      const Bounds b = f.bounds(k);
      out.sum += std::pow(kind == SumKind::kLower ? b.lower : b.upper, s);
      ++out.count;
      if (out.sum >= stop_at) {
        out.complete = out.count == kids.size();
        break;
      }
    }
    return out;
  }
}

template <TreeFamily F>
class Walker {
 public:
  using Node = typename F::Node;

  Walker(const F& f, double s, Mode mode, const CheckOptions& opt) : f_(f), s_(s), mode_(mode), opt_(opt) {}

  Partial make_partial() const {
    Partial p;
    p.d.assign(static_cast<std::size_t>(opt_.depth + 1), 0.0);
    p.lambda.assign(static_cast<std::size_t>(opt_.depth + 1), 0.0);
    return p;
  }

  // Checks `a` and, when recurse is set, its whole subtree.
  void visit(const Node& a, Partial& p, bool recurse) const {
    if (p.failure) return;
    const int d = f_.depth(a);
    const Bounds b = f_.bounds(a);
    auto& dn = p.d[static_cast<std::size_t>(d)];
    dn = std::max(dn, b.upper);
    const bool checked = d >= opt_.from_depth;
    if (checked) ++p.nodes;
    const auto kind = mode_ == Mode::kLower ? DimensionCertificate::Kind::kLowerBound
                                            : DimensionCertificate::Kind::kUpperBound;
    const auto fail = [&](const std::string& cond, double margin) {
      p.failure = CheckFailure{kind, f_.name(), s_, cond, f_.describe(a), d, margin};
    };

    if (mode_ == Mode::kLower) {
      const double target = std::pow(b.upper, s_);
      if (checked) {
        const double stop =
            opt_.policy == SumPolicy::kEarlyExit ? target * (1.0 + 1e-9) : std::numeric_limits<double>::infinity();
        const DescendantSum ds = sum_descendants(f_, a, s_, SumKind::kLower, stop);
        const double margin = ds.sum / target - 1.0;
        if (!ds.complete) p.sum_is_lower_bound = true;
        p.sum.offer(margin, [&] { return f_.describe(a); });
        if (margin < -opt_.tie_tolerance) return fail("descendant_sum", margin);
        bump(p.d, d + 1, ds.max_diam);

        const auto bn = f_.separation(d);
        if (!bn) throw PreconditionViolation("family provides no separation data");
        const double gap = f_.sibling_gap(a);
        if (std::isfinite(gap)) {
          const double sep_margin = gap / (*bn * b.upper) - 1.0;
          p.sep.offer(sep_margin, [&] { return f_.describe(a); });
          if (sep_margin < -opt_.tie_tolerance) return fail("sibling_separation", sep_margin);
        }
      } else if (d + 1 == opt_.depth) {
        const DescendantSum ds = sum_descendants(f_, a, s_, SumKind::kUpper, 0.0);
        bump(p.d, d + 1, ds.max_diam);
      }
    } else {
      const DescendantSum ds = sum_descendants(f_, a, s_, SumKind::kUpper, std::numeric_limits<double>::infinity());
      double total = ds.sum;
      if (!f_.finite_descendants()) {
        std::optional<double> tail;
        if constexpr (HasTailBound<F>) tail = f_.tail_bound(a, s_);
        if (!tail) throw TailBoundMissing("infinite descendant set at " + f_.describe(a) + " has no tail bound");
        total += *tail;
      }
      p.lambda[static_cast<std::size_t>(d + 1)] += total;
      bump(p.d, d + 1, ds.max_diam);
      if (checked) {
        const double margin = 1.0 - total / std::pow(b.lower, s_);
        p.sum.offer(margin, [&] { return f_.describe(a); });
        if (margin < -opt_.tie_tolerance) return fail("descendant_sum", margin);
      }
    }

    if (recurse && d + 1 < opt_.depth) {
      std::vector<Node> kids;
      f_.descendants(a, kids);
      for (const auto& k : kids) {
        visit(k, p, true);
        if (p.failure) return;
      }
    }
  }

 private:
  static void bump(std::vector<double>& v, int i, double x) {
    if (i < static_cast<int>(v.size())) v[static_cast<std::size_t>(i)] = std::max(v[static_cast<std::size_t>(i)], x);
  }

  const F& f_;
  double s_;
  Mode mode_;
  CheckOptions opt_;
};

inline unsigned thread_count(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

template <TreeFamily F>
CheckResult run_check(const F& f, double s, Mode mode, const CheckOptions& opt) {
  if (!(s > 0.0)) throw PreconditionViolation("exponent s must be positive");
  if (opt.depth < 1) throw PreconditionViolation("depth must be >= 1");
  if (opt.from_depth < 0 || opt.from_depth >= opt.depth) {
    throw PreconditionViolation("from_depth must lie in [0, depth)");
  }
  Walker<F> walker(f, s, mode, opt);
  const auto root = f.root();

  Partial total = walker.make_partial();
  walker.visit(root, total, false);
  std::vector<Partial> parts;
  if (!total.failure && opt.depth > 1) {
    std::vector<typename F::Node> kids;
    f.descendants(root, kids);
    parts.resize(kids.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_failure{kids.size()};
    const auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= kids.size() || i > first_failure.load()) return;
        parts[i] = walker.make_partial();
        walker.visit(kids[i], parts[i], true);
        if (parts[i].failure) {
          std::size_t cur = first_failure.load();
          while (i < cur && !first_failure.compare_exchange_weak(cur, i)) {
          }
        }
      }
    };
    const unsigned n = std::min<unsigned>(thread_count(opt.threads), static_cast<unsigned>(std::max<std::size_t>(kids.size(), 1)));
    if (n <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
  }
  for (auto& p : parts) {
    if (total.failure) break;
    if (p.d.empty()) continue;
    for (std::size_t i = 0; i < total.d.size(); ++i) {
      total.d[i] = std::max(total.d[i], p.d[i]);
      total.lambda[i] += p.lambda[i];
    }
    if (p.sum.margin < total.sum.margin) total.sum = p.sum;
    if (p.sep.margin < total.sep.margin) total.sep = p.sep;
    total.sum_is_lower_bound = total.sum_is_lower_bound || p.sum_is_lower_bound;
    total.nodes += p.nodes;
    if (p.failure) total.failure = p.failure;
  }
  if (total.failure) return *total.failure;

  DimensionCertificate cert;
  cert.kind = mode == Mode::kLower ? DimensionCertificate::Kind::kLowerBound : DimensionCertificate::Kind::kUpperBound;
  cert.family = f.name();
  cert.s = s;
  cert.depth_checked = opt.depth;
  cert.from_depth = opt.from_depth;
  cert.nodes_checked = total.nodes;
  cert.conditions.push_back({"descendant_sum", true, total.sum.margin,
                             total.sum_is_lower_bound ? "lower_bound" : "exact", total.sum.witness});
  const auto root_bounds = f.bounds(root);
  total.lambda[0] = std::pow(root_bounds.upper, s);
  for (int n = 0; n <= opt.depth; ++n) {
    StageStat st;
    st.depth = n;
    st.d_n = total.d[static_cast<std::size_t>(n)];
    if (mode == Mode::kUpper) st.lambda = total.lambda[static_cast<std::size_t>(n)];
    if (mode == Mode::kLower) st.separation = f.separation(n);
    cert.stages.push_back(st);
  }

  if (mode == Mode::kLower) {
    Condition sep{"sibling_separation", true, total.sep.margin, "exact", total.sep.witness};
    cert.conditions.push_back(sep);
    // Stage diameters decay: min over n >= 1 of log(1/d_n)/n must be positive.
    Condition decay{"stage_diameter_decay", true, std::numeric_limits<double>::infinity(), "finite_depth_evidence",
                    "min over checked n >= 1 of log(1/d_n)/n"};
    for (int n = 1; n <= opt.depth; ++n) {
      const double dn = total.d[static_cast<std::size_t>(n)];
      decay.margin = std::min(decay.margin, std::log(1.0 / dn) / n);
    }
    decay.satisfied = decay.margin > 0.0;
    cert.conditions.push_back(decay);
    cert.conditions.push_back(separation_growth_condition(f, cert.separation_growth));
    for (const auto& c : cert.conditions) {
      if (!c.satisfied) {
        return CheckFailure{cert.kind, f.name(), s, c.name, c.witness, 0, c.margin};
      }
    }
  } else {
    // Lambda_s should not increase over the stages whose parents were checked.
    Condition mono{"lambda_non_increasing", true, std::numeric_limits<double>::infinity(), "exact",
                   "Lambda_s(j+1)/Lambda_s(j) over checked stages"};
    for (int j = opt.from_depth; j < opt.depth; ++j) {
      const double a = total.lambda[static_cast<std::size_t>(j)];
      const double b = total.lambda[static_cast<std::size_t>(j + 1)];
      mono.margin = std::min(mono.margin, 1.0 - b / a);
    }
    mono.satisfied = mono.margin >= -opt.tie_tolerance;
    cert.conditions.push_back(mono);
    if (!mono.satisfied) return CheckFailure{cert.kind, f.name(), s, mono.name, mono.witness, 0, mono.margin};
  }
  return cert;
}

}  // namespace detail

template <TreeFamily F>
CheckResult check_lower_conditions(const F& family, double s, const CheckOptions& opt) {
  return detail::run_check(family, s, detail::Mode::kLower, opt);
}

template <TreeFamily F>
CheckResult check_upper_conditions(const F& family, double s, const CheckOptions& opt) {
  return detail::run_check(family, s, detail::Mode::kUpper, opt);
}

struct ExponentBracket {
  double s_low = 0.0;
  double s_high = 0.0;
  DimensionCertificate lower;
  DimensionCertificate upper;
  int iterations = 0;
};

nlohmann::ordered_json bracket_to_json(const ExponentBracket& b);

// Bisects the lower-check boundary in [s_min, ambient] and the upper-check
// boundary likewise. s_low passes the lower check, s_high the upper check.
template <TreeFamily F>
ExponentBracket critical_exponent(const F& family, double tol, const CheckOptions& opt, double s_min = 0.0) {
  if (!(tol > 0.0)) throw PreconditionViolation("tol must be positive");
  const double s_max = family.ambient_dimension();
  if (s_min <= 0.0) s_min = std::min(tol, s_max / 2);

  auto lo_res = check_lower_conditions(family, s_min, opt);
  if (!passed(lo_res)) {
    const auto& f = std::get<CheckFailure>(lo_res);
    throw NoBracket("lower check fails already at s = " + std::to_string(s_min) + " (" + f.condition + " at " +
                    f.node + ", margin " + std::to_string(f.margin) + ")");
  }
  auto hi_res = check_upper_conditions(family, s_max, opt);
  if (!passed(hi_res)) {
    const auto& f = std::get<CheckFailure>(hi_res);
    throw NoBracket("upper check fails at the ambient dimension s = " + std::to_string(s_max) + " (" +
                    f.condition + " at " + f.node + ")");
  }

  ExponentBracket out;
  out.lower = std::get<DimensionCertificate>(lo_res);
  out.upper = std::get<DimensionCertificate>(hi_res);
  // Largest passing lower exponent.
  double a = s_min;
  double b = s_max;
  if (auto r = check_lower_conditions(family, s_max, opt); passed(r)) {
    a = s_max;
    out.lower = std::get<DimensionCertificate>(r);
  }
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    auto r = check_lower_conditions(family, m, opt);
    ++out.iterations;
    if (passed(r)) {
      a = m;
      out.lower = std::get<DimensionCertificate>(r);
    } else {
      b = m;
    }
  }
  out.s_low = a;
  // Smallest passing upper exponent.
  a = s_min;
  b = s_max;
  if (auto r = check_upper_conditions(family, s_min, opt); passed(r)) {
    b = s_min;
    out.upper = std::get<DimensionCertificate>(r);
  }
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    auto r = check_upper_conditions(family, m, opt);
    ++out.iterations;
    if (passed(r)) {
      b = m;
      out.upper = std::get<DimensionCertificate>(r);
    } else {
      a = m;
    }
  }
  out.s_high = b;
  return out;
}

}  // namespace hurwitz
