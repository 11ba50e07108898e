#include "khw/slopes.hpp"

#include <cstdlib>
#include <map>

#include "json.hpp"

#include "khw/error.hpp"
#include "khw/goeritz.hpp"

namespace khw {

long filling_order(const SlopeSystem& sys, const Slope& s) {
  return sys.c * std::labs(s.p * sys.lambda_y - s.q * sys.lambda_x);
}

QACertificate qa_propagate(const SlopeSystem& sys, long a, long b, const Slope& target,
                           long max_nodes) {
  if (a <= 0 || b <= 0)
    throw InputError("triad hypothesis fails: det(tau(1/0)) and det(tau(0)) must be positive");
  if (target.negative()) throw InputError("negative target slope: mirror the tangle first");
  if (target.p + target.q > max_nodes)
    throw InputError("certificate for " + to_string(target) + " would exceed " +
                     std::to_string(max_nodes) + " nodes");
  QACertificate cert;
  cert.system = sys;
  cert.a = a;
  cert.b = b;
  cert.target = target;
  cert.additive = true;

  // Iterative post-order build; node indices follow discovery order.
  struct Frame {
    int node;
    bool expanded;
  };
  cert.nodes.push_back({target, 0, -1, -1, 0, false});
  std::vector<Frame> stack = {{0, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    QANode& nd = cert.nodes[id];
    if (!expanded) {
      if (nd.slope.q == 0 || nd.slope.p == 0) {
        nd.leaf = true;
        nd.det = sys.c * (nd.slope.q == 0 ? a : b);
        cert.depth = std::max(cert.depth, nd.depth);
        continue;
      }
      const auto res = cf_resolve(cf_expand(nd.slope));
      const int depth = nd.depth + 1;
      const int z = static_cast<int>(cert.nodes.size());
      cert.nodes.push_back({res.zero.value, 0, -1, -1, depth, false});
      cert.nodes.push_back({res.one.value, 0, -1, -1, depth, false});
      cert.nodes[id].zero = z;
      cert.nodes[id].one = z + 1;
      stack.push_back({id, true});
      stack.push_back({z + 1, false});
      stack.push_back({z, false});
      continue;
    }
    const QANode& n0 = cert.nodes[nd.zero];
    const QANode& n1 = cert.nodes[nd.one];
    nd.det = n0.det + n1.det;
    if (n0.slope.p + n1.slope.p != nd.slope.p || n0.slope.q + n1.slope.q != nd.slope.q)
      cert.additive = false;
    if (nd.det != sys.c * (nd.slope.p * a + nd.slope.q * b)) cert.additive = false;
  }
  return cert;
}

bool check_against(const QACertificate& cert, const Tangle& t, std::string* why) {
  std::map<std::pair<long, long>, long> seen;
  for (const auto& nd : cert.nodes) {
    auto key = std::make_pair(nd.slope.p, nd.slope.q);
    auto it = seen.find(key);
    const long d = it != seen.end() ? it->second : determinant(tau(t, nd.slope));
    seen[key] = d;
    if (d != nd.det) {
      if (why)
        *why = "det(tau(" + to_string(nd.slope) + ")) = " + std::to_string(d) +
               ", certificate says " + std::to_string(nd.det);
      return false;
    }
  }
  return true;
}

std::string to_json(const QACertificate& cert) {
  nlohmann::ordered_json doc;
  doc["target"] = to_string(cert.target);
  doc["c_M"] = cert.system.c;
  doc["lambda"] = {cert.system.lambda_x, cert.system.lambda_y};
  doc["triad"] = {{"det_inf", cert.system.c * cert.a}, {"det_zero", cert.system.c * cert.b}};
  doc["depth"] = cert.depth;
  doc["additive"] = cert.additive;
  auto nodes = nlohmann::ordered_json::array();
  for (const auto& nd : cert.nodes) {
    nlohmann::ordered_json j;
    j["slope"] = to_string(nd.slope);
    j["det"] = nd.det;
    j["depth"] = nd.depth;
    if (!nd.leaf) {
      j["zero"] = nd.zero;
      j["one"] = nd.one;
    }
    nodes.push_back(j);
  }
  doc["nodes"] = nodes;
  return doc.dump(2);
}

}  // namespace khw
