#pragma once

// Reference tree families with known dimension behaviour.

#include <optional>
#include <string>
#include <vector>

#include "hurwitz/jarnik.hpp"

namespace hurwitz {

// Middle-third Cantor intervals: 2^n intervals of length 3^-n, gap 3^-(n+1)
// between the two children of a stage-n interval.
class MiddleThirdCantor {
 public:
  struct Node {
    int depth;
    double left;
  };

  Node root() const { return {0, 0.0}; }
  int depth(const Node& n) const { return n.depth; }
  Bounds bounds(const Node& n) const;
  void descendants(const Node& n, std::vector<Node>& out) const;
  std::optional<double> separation(int) const { return 0.25; }
  double sibling_gap(const Node& n) const;
  std::string describe(const Node& n) const;
  bool finite_descendants() const { return true; }
  double ambient_dimension() const { return 1.0; }
  std::string name() const { return "middle_third_cantor"; }
};

// One child per node, half the parent's diameter.
class SingleChildChain {
 public:
  struct Node {
    int depth;
  };

  Node root() const { return {0}; }
  int depth(const Node& n) const { return n.depth; }
  Bounds bounds(const Node& n) const;
  void descendants(const Node& n, std::vector<Node>& out) const;
  std::optional<double> separation(int) const { return 0.25; }
  double sibling_gap(const Node&) const;
  std::string describe(const Node& n) const;
  bool finite_descendants() const { return true; }
  double ambient_dimension() const { return 1.0; }
  std::string name() const { return "single_child_chain"; }
};

static_assert(TreeFamily<MiddleThirdCantor>);
static_assert(TreeFamily<SingleChildChain>);

}  // namespace hurwitz
