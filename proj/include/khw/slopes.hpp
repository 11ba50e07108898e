#pragma once

#include <string>
#include <vector>

#include "khw/slope.hpp"
#include "khw/tangle.hpp"

namespace khw {

// c * Delta(s, lambda) = c * |p y - q x|.
long filling_order(const SlopeSystem& sys, const Slope& s);

struct QANode {
  Slope slope;
  long det = 0;
  int zero = -1;  // child for the 0-resolution of the terminal crossing
  int one = -1;
  int depth = 0;
  bool leaf = false;
};

// Farey recursion from a target slope down to the triad legs 1/0 and 0/1,
// with det(tau(1/0)) = c a and det(tau(0)) = c b.
struct QACertificate {
  SlopeSystem system;
  long a = 0;
  long b = 0;
  Slope target;
  std::vector<QANode> nodes;  // nodes[0] is the target
  int depth = 0;              // longest root-to-leaf path, in edges
  bool additive = false;      // det(node) = det(zero) + det(one) everywhere
};

// Throws InputError when a or b is not positive, when the target is
// negative (mirror first) or when the tree would exceed max_nodes.
QACertificate qa_propagate(const SlopeSystem& sys, long a, long b, const Slope& target,
                           long max_nodes = 1'000'000);

// Compares every node with goeritz determinant(tau(t, slope)); the first
// mismatch is described in *why.
bool check_against(const QACertificate& cert, const Tangle& t, std::string* why = nullptr);

std::string to_json(const QACertificate& cert);

}  // namespace khw
