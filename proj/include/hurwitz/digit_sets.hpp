#pragma once

// HCF digit-restricted families as tree families, plus the closed-form
// exponent bounds that go with them.

#include <json.hpp>

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hurwitz/geometry.hpp"
#include "hurwitz/jarnik.hpp"

namespace hurwitz {

struct Schedule {
  std::string name;
  std::function<double(long)> f;
  std::function<double(long)> g;
  double c_prime = 0.1;  // f(n) <= c' g(n)
};

// f(n) = n + 3, g(n) = 10 (n + 3), c' = 0.1.
Schedule linear_schedule();

struct DigitFilter {
  enum class Kind { kAnnulusConstant, kAnnulusLower, kSupNormSchedule };
  Kind kind = Kind::kAnnulusConstant;
  std::int64_t lo_sq = 9;   // annulus filters: |a|^2 >= lo_sq
  std::int64_t hi_sq = 36;  // AnnulusConstant: |a|^2 <= hi_sq
  double L = 3.0;
  double M = 6.0;
  std::size_t window = 64;  // AnnulusLower: smallest digits enumerated
  Schedule schedule;

  static DigitFilter annulus(double L, double M);
  static DigitFilter annulus_sq(std::int64_t lo_sq, std::int64_t hi_sq);
  static DigitFilter lower(double L, std::size_t window = 64);
  static DigitFilter sup_schedule(Schedule s);

  std::string describe() const;
};

enum class DiameterChoice {
  kSandwich,  // lower gamma/|q|^2, upper 2/|q|^2 (certified on E_sqrt8)
  kWitness,   // both equal to the witness-pair distance (an estimate)
};

class HcfTreeFamily {
 public:
  struct Node {
    int depth;
    std::int64_t qp_re, qp_im;  // q_{n-1}
    std::int64_t q_re, q_im;    // q_n
  };

  HcfTreeFamily(DigitFilter filter, DiameterChoice choice);
  HcfTreeFamily(const HcfTreeFamily&) = delete;
  HcfTreeFamily& operator=(const HcfTreeFamily&) = delete;
  HcfTreeFamily(HcfTreeFamily&&) = default;

  Node root() const { return {0, 0, 0, 1, 0}; }
  int depth(const Node& n) const { return n.depth; }
  Bounds bounds(const Node& n) const;
  void descendants(const Node& n, std::vector<Node>& out) const;
  std::optional<double> separation(int n) const;
  double sibling_gap(const Node& n) const;
  std::string describe(const Node& n) const;
  bool finite_descendants() const { return filter_.kind != DigitFilter::Kind::kAnnulusLower; }
  double ambient_dimension() const { return 2.0; }
  std::string name() const;

  DescendantSum descendant_sum(const Node& n, double s, SumKind kind, double stop_at) const;
  std::optional<double> tail_bound(const Node& n, double s) const;

  const DigitFilter& filter() const { return filter_; }
  DiameterChoice choice() const { return choice_; }
  // Diameters are multiplied by this so the root diameter is at most 1.
  double scale() const { return scale_; }
  // Digits of level n >= 1 in canonical order.
  std::vector<GaussianInt> level_digits(int n) const;
  std::size_t level_size(int n) const;
  nlohmann::ordered_json info_json() const;

 private:
  struct Level {
    std::vector<double> re, im;
    std::vector<std::int64_t> ire, iim;
    double min_abs = 0, max_abs = 0, second_abs = 0, max_component = 0;
    std::int64_t next_norm = 0;  // smallest norm beyond an enumerated window
  };
  const Level& level(int n) const;
  Level build_level(int n) const;

  DigitFilter filter_;
  DiameterChoice choice_;
  double scale_ = 1.0;
  double gamma_ = 0.0;
  double k_sep_ = 0.0;
  double rho_ = 0.0;
  double xi_re_ = 0.0, xi_im_ = 0.0, abs_xi_ = 0.0;
  double c3_ = 0.0;
  std::unique_ptr<Level> shared_;  // constant filters
  static constexpr int kMaxLevels = 4096;
  mutable std::unique_ptr<std::atomic<Level*>[]> levels_;
  mutable std::vector<std::unique_ptr<Level>> owned_;
  mutable std::unique_ptr<std::mutex> mutex_;
};

static_assert(TreeFamily<HcfTreeFamily>);
static_assert(HasTailBound<HcfTreeFamily>);
static_assert(HasDescendantSum<HcfTreeFamily>);

// Throws FilterTooWeak when L < sqrt8.
HcfTreeFamily build_family(const DigitFilter& filter, DiameterChoice choice = DiameterChoice::kSandwich);

// 2 log M / (2 log M + 2 log(1 + 1/M) - log(gamma/2)).
double lower_exponent_closed_form(double M, double gamma);

struct UpperThreshold {
  double epsilon;
  double c_T;    // lattice tail constant
  double c2;     // 2^(3+3eps) c_T / gamma^(1+eps)
  double L_min;  // least L (> 2) with c2 L^(-2eps) <= 1
};
UpperThreshold upper_exponent_threshold(double epsilon, double gamma);

// Direct check of the lattice tail constant: for each L, the sum of
// |b|^(-(2+2eps)) over L <= |b| <= R plus the analytic remainder beyond R
// against c_T L^(-2eps).
struct TailCheckRow {
  double L = 0;
  double direct = 0;
  double remainder = 0;
  double bound = 0;  // c_T L^(-2eps)
  double margin = 0; // 1 - (direct + remainder)/bound
};
std::vector<TailCheckRow> tail_constant_check(double epsilon, std::span<const double> Ls, double R = 1000.0);

struct ScheduleEvaluation {
  long n = 0;
  double f = 0, g = 0;  // at n + 1
  double ratio = 0;
  double margin = 0;    // ratio - s
  double c5 = 0;
  bool applicable = false;  // f <= c' g and g - f >= 4
  bool satisfied = false;
};
ScheduleEvaluation schedule_condition(const Schedule& sch, double s, long n, double gamma);

struct ScheduleScan {
  double s = 0;
  long n_max = 0;
  std::optional<long> N;  // least N with the condition true on [N, n_max]
  bool ratio_increasing = true;
  std::vector<ScheduleEvaluation> rows;
};
ScheduleScan schedule_scan(const Schedule& sch, double s, long n_max, double gamma);

// Lambda_s of stages of E_L^M against their images under v_prefix, with
// witness-pair diameters. Each image/base ratio must lie in [m^s, M^s]
// where m, M bound |v'| on the fundamental domain.
struct PrefixedStage {
  int depth = 0;
  double lambda_base = 0, lambda_image = 0, ratio = 0;
  bool within = false;
};
struct PrefixedCheck {
  std::vector<GaussianInt> prefix;
  double s = 0;
  double lo = 0, hi = 0;  // m^s, M^s
  std::vector<PrefixedStage> stages;
  bool passed = false;
};
PrefixedCheck prefixed_lambda_check(std::span<const GaussianInt> prefix, const DigitFilter& base, double s,
                                    int depth);

nlohmann::ordered_json schedule_scan_to_json(const ScheduleScan& scan, std::size_t max_rows = 0);
nlohmann::ordered_json prefixed_check_to_json(const PrefixedCheck& c);

}  // namespace hurwitz
