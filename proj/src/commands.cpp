#include "hurwitz/commands.hpp"

#include <cmath>

#include "hurwitz/cantor.hpp"
#include "hurwitz/constants.hpp"
#include "hurwitz/digit_sets.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/geometry.hpp"
#include "hurwitz/hcf.hpp"
#include "hurwitz/jarnik.hpp"
#include "hurwitz/parse.hpp"

namespace hurwitz {
namespace {

using Json = nlohmann::ordered_json;

Json stage_table(const CheckResult& r) {
  Json t = Json::array();
  if (!passed(r)) return t;
  for (const auto& st : std::get<DimensionCertificate>(r).stages) {
    Json row;
    row["depth"] = st.depth;
    row["d_n"] = st.d_n;
    row["lambda_s"] = st.lambda ? Json(*st.lambda) : Json(nullptr);
    row["B_n"] = st.separation ? Json(*st.separation) : Json(nullptr);
    t.push_back(std::move(row));
  }
  return t;
}

CheckOptions check_options(const DimBoundsConfig& cfg) {
  CheckOptions o;
  o.depth = cfg.depth;
  o.from_depth = cfg.from_depth;
  o.policy = cfg.early_exit ? SumPolicy::kEarlyExit : SumPolicy::kExhaustive;
  o.threads = cfg.threads;
  return o;
}

DiameterChoice diameters(const std::string& s) {
  if (s == "sandwich") return DiameterChoice::kSandwich;
  if (s == "witness") return DiameterChoice::kWitness;
  throw ParseError("unknown diameter choice '" + s + "'");
}

Json scan_M() {
  const double gamma = constants().gamma;
  Json j;
  j["scan"] = "M";
  j["gamma"] = gamma;
  Json rows = Json::array();
  double prev = -1.0;
  bool increasing = true;
  for (double M = 10.0; M <= 1e6; M *= 10.0) {
    const double s = lower_exponent_closed_form(M, gamma);
    increasing = increasing && s > prev;
    prev = s;
    rows.push_back({{"M", static_cast<long>(M)}, {"s_closed_form", s}});
  }
  j["strictly_increasing"] = increasing;
  j["table"] = std::move(rows);
  return j;
}

Json scan_epsilon() {
  const double gamma = constants().gamma;
  Json j;
  j["scan"] = "epsilon";
  Json rows = Json::array();
  for (int k = 1; k <= 9; ++k) {
    const UpperThreshold u = upper_exponent_threshold(k / 10.0, gamma);
    rows.push_back({{"epsilon", u.epsilon}, {"c_T", u.c_T}, {"c2", u.c2}, {"L_min", u.L_min}});
  }
  j["table"] = std::move(rows);
  return j;
}

Json dim_annulus(const DimBoundsConfig& cfg) {
  const double gamma = constants().gamma;
  const HcfTreeFamily fam = build_family(DigitFilter::annulus(cfg.L, cfg.M), diameters(cfg.diameters));
  const double closed = lower_exponent_closed_form(cfg.M, gamma);
  const double s = cfg.s.value_or(closed - 1e-6);
  const CheckOptions opt = check_options(cfg);
  Json j;
  j["command"] = "dim-bounds";
  j["family"] = fam.info_json();
  j["closed_form_s"] = closed;
  j["s_checked"] = s;
  const CheckResult lower = check_lower_conditions(fam, s, opt);
  j["lower"] = result_to_json(lower);
  if (cfg.bracket) j["bracket"] = bracket_to_json(critical_exponent(fam, cfg.tol, opt));
  j["table"] = stage_table(lower);
  return j;
}

Json dim_lower(const DimBoundsConfig& cfg) {
  const double gamma = constants().gamma;
  const UpperThreshold u = upper_exponent_threshold(cfg.epsilon, gamma);
  const double L = cfg.L_given ? cfg.L : u.L_min;
  const HcfTreeFamily fam = build_family(DigitFilter::lower(L, cfg.window), diameters(cfg.diameters));
  const double s = cfg.s.value_or(1.0 + cfg.epsilon);
  Json j;
  j["command"] = "dim-bounds";
  j["threshold"] = {{"epsilon", u.epsilon}, {"c_T", u.c_T}, {"c2", u.c2}, {"L_min", u.L_min},
                    {"c2_L_power", u.c2 * std::pow(L, -2.0 * u.epsilon)}};
  j["family"] = fam.info_json();
  j["s_checked"] = s;
  const CheckResult upper = check_upper_conditions(fam, s, check_options(cfg));
  j["upper"] = result_to_json(upper);
  const std::vector<double> Ls{3.0, 10.0, 30.0, 100.0, 300.0, 1000.0};
  Json tail = Json::array();
  for (const auto& r : tail_constant_check(cfg.epsilon, Ls)) {
    tail.push_back({{"L", r.L}, {"direct_to_1000", r.direct}, {"remainder", r.remainder}, {"c_T_L_power", r.bound},
                    {"margin", r.margin}});
  }
  j["tail_constant_check"] = std::move(tail);
  j["table"] = stage_table(upper);
  return j;
}

Json dim_schedule(const DimBoundsConfig& cfg) {
  const double gamma = constants().gamma;
  const Schedule sch = linear_schedule();
  const double s = cfg.s.value_or(0.9);
  const ScheduleScan scan = schedule_scan(sch, s, cfg.n_max, gamma);
  Json j;
  j["command"] = "dim-bounds";
  j["schedule"] = sch.name;
  j["c_prime"] = sch.c_prime;
  j["scan"] = schedule_scan_to_json(scan, 200);
  Json rows = Json::array();
  for (const auto& r : j["scan"]["rows"]) rows.push_back(r);
  j["table"] = std::move(rows);
  return j;
}

Json dim_prefixed(const DimBoundsConfig& cfg) {
  std::vector<GaussianInt> prefix;
  for (const auto& p : cfg.prefix) {
    const Number n = parse_number(p);
    const auto* g = std::get_if<GaussianRational>(&n);
    if (!g || !g->is_gaussian_int()) throw ParseError("prefix digits must be Gaussian integers: " + p);
    prefix.push_back(g->num());
  }
  if (prefix.empty()) throw ParseError("--prefix needs at least one digit");
  const double s = cfg.s.value_or(lower_exponent_closed_form(cfg.M, constants().gamma));
  const NormFilter nf = NormFilter::euclid(cfg.L, cfg.M);
  const PrefixedCheck c = prefixed_lambda_check(prefix, DigitFilter::annulus_sq(nf.lo, nf.hi), s, cfg.depth);
  Json j;
  j["command"] = "dim-bounds";
  j["prefixed"] = prefixed_check_to_json(c);
  Json rows = Json::array();
  for (const auto& r : j["prefixed"]["stages"]) rows.push_back(r);
  j["table"] = std::move(rows);
  return j;
}

}  // namespace

Json cmd_expand(const std::string& literal, int depth, mpfr_prec_t precision, BoundaryPolicy policy) {
  const Number w = parse_number(literal, precision);
  FloatExpandOptions fo;
  fo.policy = policy;
  const HcfExpansion e = expand(w, depth, fo);
  Json j;
  j["command"] = "expand";
  j["input"] = literal;
  j["exact"] = std::holds_alternative<GaussianRational>(w);
  j["depth_requested"] = depth;
  if (!j["exact"].get<bool>()) j["policy"] = policy == BoundaryPolicy::kStrict ? "strict" : "lenient";
  const Json body = expansion_to_json(e, w);
  for (const auto& [k, v] : body.items()) j[k] = v;
  Json rows = Json::array();
  for (const auto& c : j["convergents"]) rows.push_back(c);
  j["table"] = std::move(rows);
  return j;
}

Json cmd_shapes() {
  Json j;
  j["command"] = "shapes";
  const Json table = transition_table_json();
  for (const auto& [k, v] : table.items()) j[k] = v;
  Json rows = Json::array();
  for (const auto& s : j["shapes"]) {
    for (const auto& [cls, target] : s["transitions"].items()) {
      rows.push_back({{"shape", s["shape"]}, {"digit_class", cls}, {"target", target.is_null() ? Json("empty") : target}});
    }
  }
  j["table"] = std::move(rows);
  return j;
}

Json cmd_constants(mpfr_prec_t precision) {
  Json j;
  j["command"] = "constants";
  const Json body = constants_to_json(derive_constants(precision));
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

Json cmd_cantor_demo(int depth, double tol, unsigned threads) {
  const MiddleThirdCantor cantor;
  CheckOptions o;
  o.depth = depth;
  o.threads = threads;
  const ExponentBracket b = critical_exponent(cantor, tol, o);
  const double expected = std::log(2.0) / std::log(3.0);
  Json j;
  j["command"] = "cantor-demo";
  j["expected"] = expected;
  j["tol"] = tol;
  j["contains_expected"] = b.s_low <= expected && expected <= b.s_high;
  j["bracket"] = bracket_to_json(b);
  j["table"] = Json::array({{{"bound", "lower"}, {"s", b.s_low}}, {{"bound", "upper"}, {"s", b.s_high}}});
  return j;
}

Json cmd_dim_bounds(const DimBoundsConfig& cfg) {
  if (cfg.scan == "M") return scan_M();
  if (cfg.scan == "epsilon") return scan_epsilon();
  if (!cfg.scan.empty()) throw ParseError("unknown scan '" + cfg.scan + "'");
  if (cfg.filter == "annulus") return dim_annulus(cfg);
  if (cfg.filter == "lower") return dim_lower(cfg);
  if (cfg.filter == "schedule") return dim_schedule(cfg);
  if (cfg.filter == "prefixed") return dim_prefixed(cfg);
  throw ParseError("unknown filter '" + cfg.filter + "'");
}

}  // namespace hurwitz
