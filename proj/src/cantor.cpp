#include "hurwitz/cantor.hpp"

#include <cmath>
#include <limits>

namespace hurwitz {

Bounds MiddleThirdCantor::bounds(const Node& n) const {
  const double d = std::pow(3.0, -n.depth);
  return {d, d};
}

void MiddleThirdCantor::descendants(const Node& n, std::vector<Node>& out) const {
  const double child = std::pow(3.0, -(n.depth + 1));
  out.clear();
  out.push_back({n.depth + 1, n.left});
  out.push_back({n.depth + 1, n.left + 2.0 * child});
}

double MiddleThirdCantor::sibling_gap(const Node& n) const { return std::pow(3.0, -(n.depth + 1)); }

std::string MiddleThirdCantor::describe(const Node& n) const {
  return "interval depth=" + std::to_string(n.depth) + " left=" + std::to_string(n.left);
}

Bounds SingleChildChain::bounds(const Node& n) const {
  const double d = std::ldexp(1.0, -n.depth);
  return {d, d};
}

void SingleChildChain::descendants(const Node& n, std::vector<Node>& out) const {
  out.clear();
  out.push_back({n.depth + 1});
}

double SingleChildChain::sibling_gap(const Node&) const { return std::numeric_limits<double>::infinity(); }

std::string SingleChildChain::describe(const Node& n) const { return "chain depth=" + std::to_string(n.depth); }

}  // namespace hurwitz
