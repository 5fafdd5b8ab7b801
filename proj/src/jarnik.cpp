#include "hurwitz/jarnik.hpp"

#include <sstream>

namespace hurwitz {

double lambda_sum(std::span<const double> diameters, double s) {
  if (diameters.empty()) throw PreconditionViolation("lambda_sum of an empty stage");
  double sum = 0.0;
  for (double d : diameters) sum += std::pow(d, s);
  return sum;
}

std::string kind_name(DimensionCertificate::Kind k) {
  return k == DimensionCertificate::Kind::kLowerBound ? "LowerBound" : "UpperBound";
}

namespace {

nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

nlohmann::ordered_json certificate_to_json(const DimensionCertificate& c) {
  nlohmann::ordered_json j;
  j["status"] = "certificate";
  j["kind"] = kind_name(c.kind);
  j["family"] = c.family;
  j["s"] = c.s;
  j["depth_checked"] = c.depth_checked;
  j["from_depth"] = c.from_depth;
  j["nodes_checked"] = c.nodes_checked;
  auto conds = nlohmann::ordered_json::array();
  for (const auto& cond : c.conditions) {
    nlohmann::ordered_json x;
    x["name"] = cond.name;
    x["satisfied"] = cond.satisfied;
    x["margin"] = number_or_null(cond.margin);
    x["margin_kind"] = cond.margin_kind;
    x["witness"] = cond.witness;
    conds.push_back(std::move(x));
  }
  j["conditions"] = std::move(conds);
  auto stages = nlohmann::ordered_json::array();
  for (const auto& st : c.stages) {
    nlohmann::ordered_json x;
    x["depth"] = st.depth;
    x["d_n"] = st.d_n;
    if (st.lambda) x["lambda_s"] = *st.lambda;
    if (st.separation) x["B_n"] = *st.separation;
    stages.push_back(std::move(x));
  }
  j["stages"] = std::move(stages);
  if (!c.separation_growth.empty()) {
    auto g = nlohmann::ordered_json::array();
    for (const auto& [n, v] : c.separation_growth) {
      nlohmann::ordered_json x;
      x["n"] = n;
      x["loglog_inv_B_over_log_n"] = number_or_null(v);
      g.push_back(std::move(x));
    }
    j["separation_growth"] = std::move(g);
  }
  return j;
}

nlohmann::ordered_json failure_to_json(const CheckFailure& f) {
  nlohmann::ordered_json j;
  j["status"] = "failure";
  j["kind"] = kind_name(f.kind);
  j["family"] = f.family;
  j["s"] = f.s;
  j["condition"] = f.condition;
  j["node"] = f.node;
  j["node_depth"] = f.node_depth;
  j["margin"] = number_or_null(f.margin);
  return j;
}

nlohmann::ordered_json result_to_json(const CheckResult& r) {
  if (const auto* c = std::get_if<DimensionCertificate>(&r)) return certificate_to_json(*c);
  return failure_to_json(std::get<CheckFailure>(r));
}

std::string lambda_csv(const DimensionCertificate& c) {
  std::ostringstream out;
  out.precision(17);
  out << "depth,lambda_s\n";
  for (const auto& st : c.stages) {
    if (st.lambda) out << st.depth << "," << *st.lambda << "\n";
  }
  return out.str();
}

nlohmann::ordered_json bracket_to_json(const ExponentBracket& b) {
  nlohmann::ordered_json j;
  j["s_low"] = b.s_low;
  j["s_high"] = b.s_high;
  j["bisection_steps"] = b.iterations;
  j["lower_certificate"] = certificate_to_json(b.lower);
  j["upper_certificate"] = certificate_to_json(b.upper);
  return j;
}

}  // namespace hurwitz
