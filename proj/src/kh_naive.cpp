// Cube-of-resolutions backend. Generators are labellings of the circles of
// each smoothing by 1 and x; the basepoint circle is pinned to 1, which is
// the reduced quotient complex.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "kh_detail.hpp"
#include "khw/error.hpp"
#include "khw/f2.hpp"

namespace khw::detail {

namespace {

int find(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

// Circle structure of one vertex of the cube.
struct Vertex {
  std::vector<uint8_t> circle;  // circle id per edge
  std::vector<int> rep;         // first edge of every circle
  int marked = 0;
};

// Drops bit `skip` from a mask, closing the gap.
uint32_t compress(uint32_t full, int skip) {
  const uint32_t low = full & ((1u << skip) - 1);
  return low | ((full >> (skip + 1)) << skip);
}

uint32_t expand(uint32_t compact, int skip) {
  const uint32_t low = compact & ((1u << skip) - 1);
  return low | ((compact >> skip) << (skip + 1));
}

}  // namespace

IJRanks naive_ij(const OrientedDiagram& od, int capacity) {
  const PlanarDiagram& d = od.diagram;
  const int n = d.size();
  if (n > capacity)
    throw CapacityError(std::to_string(n) + " crossings exceed the naive backend cap of " +
                        std::to_string(capacity) + "; use --backend scan");
  if (n > 24) throw CapacityError("naive backend is limited to 24 crossings");

  const auto labels = d.edge_labels();
  const int E = static_cast<int>(labels.size());
  auto edge = [&](int label) {
    return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  };
  std::vector<std::array<int, 4>> xe(n);
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < 4; ++k) xe[c][k] = edge(d.crossings[c].e[k]);
  const int base_edge = edge(d.basepoint);

  const uint32_t V = 1u << n;
  std::vector<Vertex> vert(V);
  std::vector<int> uf(E);
  int max_circles = 0;
  for (uint32_t v = 0; v < V; ++v) {
    std::iota(uf.begin(), uf.end(), 0);
    for (int c = 0; c < n; ++c) {
      const int u = d.crossings[c].under_slot();
      const int a = (v >> c) & 1 ? u + 1 : u;
      uf[find(uf, xe[c][a % 4])] = find(uf, xe[c][(a + 1) % 4]);
      uf[find(uf, xe[c][(a + 2) % 4])] = find(uf, xe[c][(a + 3) % 4]);
    }
    auto& vx = vert[v];
    vx.circle.resize(E);
    std::vector<int> id(E, -1);
    for (int e = 0; e < E; ++e) {
      const int r = find(uf, e);
      if (id[r] < 0) {
        id[r] = static_cast<int>(vx.rep.size());
        vx.rep.push_back(e);
      }
      vx.circle[e] = static_cast<uint8_t>(id[r]);
    }
    vx.marked = vx.circle[base_edge];
    max_circles = std::max(max_circles, static_cast<int>(vx.rep.size()));
  }

  // rank among equal-popcount masks below it: position inside a q-block
  const uint32_t M = 1u << (max_circles - 1);
  std::vector<uint32_t> prank(M);
  {
    std::vector<uint32_t> seen(max_circles + 1, 0);
    for (uint32_t x = 0; x < M; ++x) prank[x] = seen[std::popcount(x)]++;
  }

  // Blocks are keyed by (h, j); base offsets per vertex and x-count.
  const int shift = od.n_plus - 2 * od.n_minus;
  auto j_of = [&](uint32_t v, int xs) {
    const int unmarked = static_cast<int>(vert[v].rep.size()) - 1;
    return unmarked - 2 * xs + std::popcount(v) + shift;
  };
  std::map<std::pair<int, int>, long> dim;
  std::vector<std::vector<uint32_t>> base(V);
  for (uint32_t v = 0; v < V; ++v) {
    const int h = std::popcount(v);
    const int m = static_cast<int>(vert[v].rep.size()) - 1;
    base[v].resize(m + 1);
    for (int p = 0; p <= m; ++p) {
      auto& cnt = dim[{h, j_of(v, p)}];
      base[v][p] = static_cast<uint32_t>(cnt);
      long binom = 1;
      for (int t = 0; t < p; ++t) binom = binom * (m - t) / (t + 1);
      cnt += binom;
    }
  }

  // rank of d_h restricted to quantum grading j
  std::map<std::pair<int, int>, long> rank;
  for (int h = 0; h < n; ++h) {
    std::map<int, F2Matrix> blocks;
    for (uint32_t v = 0; v < V; ++v) {
      if (std::popcount(v) != h) continue;
      const auto& vx = vert[v];
      const int m = static_cast<int>(vx.rep.size()) - 1;
      for (uint32_t g = 0; g < (1u << m); ++g) {
        const int xs = std::popcount(g);
        const int j = j_of(v, xs);
        auto it = blocks.find(j);
        if (it == blocks.end())
          it = blocks.emplace(j, F2Matrix(dim[{h, j}], dim[{h + 1, j}])).first;
        F2Row& row = it->second.row(base[v][xs] + prank[g]);
        const uint32_t full = expand(g, vx.marked);
        for (int c = 0; c < n; ++c) {
          if ((v >> c) & 1) continue;
          const uint32_t w = v | (1u << c);
          const auto& wx = vert[w];
          const int u = d.crossings[c].under_slot();
          const int c1 = vx.circle[xe[c][u]], c2 = vx.circle[xe[c][(u + 2) % 4]];
          uint32_t rest = 0;
          for (int k = 0; k < static_cast<int>(vx.rep.size()); ++k)
            if (k != c1 && k != c2 && ((full >> k) & 1)) rest |= 1u << wx.circle[vx.rep[k]];
          auto emit = [&](uint32_t target) {
            if ((target >> wx.marked) & 1) return;
            const uint32_t tc = compress(target, wx.marked);
            const uint32_t col = base[w][std::popcount(tc)] + prank[tc];
            row.toggle(col);
          };
          const bool x1 = (full >> c1) & 1, x2 = (full >> c2) & 1;
          if (c1 != c2) {
            if (x1 && x2) continue;
            const int cm = wx.circle[xe[c][u]];
            emit(rest | ((x1 || x2) ? 1u << cm : 0u));
          } else {
            const int d1 = wx.circle[xe[c][(u + 1) % 4]], d2 = wx.circle[xe[c][(u + 3) % 4]];
            if (x1) {
              emit(rest | (1u << d1) | (1u << d2));
            } else {
              emit(rest | (1u << d1));
              emit(rest | (1u << d2));
            }
          }
        }
      }
    }
    for (auto& [j, mat] : blocks) rank[{h, j}] = static_cast<long>(mat.rank());
  }

  IJRanks out;
  for (auto [key, dm] : dim) {
    auto [h, j] = key;
    long r = dm;
    if (auto it = rank.find({h, j}); it != rank.end()) r -= it->second;
    if (auto it = rank.find({h - 1, j}); it != rank.end()) r -= it->second;
    if (r > 0) out[{h - od.n_minus, j}] = r;
  }
  return out;
}

}  // namespace khw::detail
