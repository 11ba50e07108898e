// Scanning backend. Crossings are added one at a time to a complex over the
// dotted cobordism category of the partial tangle (F2 coefficients, a dot
// squares to zero). Closed loops are delooped as soon as they appear and
// every isomorphism in the differential is cancelled before the next
// crossing, which keeps the complex small. The basepoint edge is cut open,
// so the last stage is a complex over the single arc and its objects are
// the reduced homology.
//
// A morphism between two crossingless matchings m1, m2 of the boundary is a
// sum of basis cobordisms: one disk per cycle of m1 u m2, each disk dotted
// or not. A basis element is the bitmask of its dotted cycles, with cycles
// numbered in order of their smallest boundary point.

#include <algorithm>
#include <array>
#include <bit>
#include <climits>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "kh_detail.hpp"
#include "khw/error.hpp"

namespace khw::detail {

namespace {

using Mask = uint64_t;
using Terms = std::vector<Mask>;  // sorted; a sum over F2
using Matching = std::vector<uint8_t>;

constexpr int kMaxBits = 64;

void toggle_term(Terms& t, Mask m) {
  auto it = std::lower_bound(t.begin(), t.end(), m);
  if (it != t.end() && *it == m)
    t.erase(it);
  else
    t.insert(it, m);
}

void add_terms(Terms& acc, const Terms& x) {
  Terms out;
  out.reserve(acc.size() + x.size());
  std::set_symmetric_difference(acc.begin(), acc.end(), x.begin(), x.end(),
                                std::back_inserter(out));
  acc = std::move(out);
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

class MatchTable {
 public:
  int intern(const Matching& m) {
    auto [it, fresh] = index_.emplace(m, static_cast<int>(list_.size()));
    if (fresh) list_.push_back(m);
    return it->second;
  }
  const Matching& operator[](int i) const { return list_[i]; }

 private:
  std::vector<Matching> list_;
  std::map<Matching, int> index_;
};

struct Cycles {
  int count = 0;
  std::vector<uint8_t> of_point;
};

Cycles pair_cycles(const Matching& a, const Matching& b) {
  Cycles c;
  const int P = static_cast<int>(a.size());
  c.of_point.assign(P, UINT8_MAX);
  for (int p = 0; p < P; ++p) {
    if (c.of_point[p] != UINT8_MAX) continue;
    const auto id = static_cast<uint8_t>(c.count++);
    for (int x = p;;) {
      c.of_point[x] = id;
      const int y = a[x];
      c.of_point[y] = id;
      x = b[y];
      if (x == p) break;
    }
  }
  return c;
}

// A surface glued from disks, reduced to the basis of dotted disks on its
// boundary circles. Component k has Euler characteristic chi[k] and dots[k]
// dots; circle_comp[i] is the component bounded by result circle i. Adds the
// resulting sum to `out`.
void evaluate(const std::vector<int>& chi, const std::vector<int>& dots,
              const std::vector<int>& circle_comp, Terms& out) {
  const int ncomp = static_cast<int>(chi.size());
  std::vector<Mask> circles(ncomp, 0);
  std::vector<int> bcount(ncomp, 0);
  for (size_t i = 0; i < circle_comp.size(); ++i) {
    circles[circle_comp[i]] |= Mask{1} << i;
    ++bcount[circle_comp[i]];
  }
  Terms acc{0};
  for (int k = 0; k < ncomp; ++k) {
    const int b = bcount[k], D = dots[k];
    const int twice_genus = 2 - chi[k] - b;
    if (twice_genus < 0 || twice_genus % 2)
      throw std::logic_error("scan: impossible surface component");
    // A handle is twice a dot, hence zero over F2.
    if (twice_genus > 0) return;
    if (b == 0) {
      if (D == 1) continue;  // dotted sphere
      return;
    }
    if (D >= 2) return;
    Terms next;
    if (D == 1) {
      for (Mask a : acc) next.push_back(a | circles[k]);
    } else {
      // Neck cutting: all boundary circles but one carry a dot.
      for (Mask a : acc)
        for (Mask c = circles[k]; c; c &= c - 1) next.push_back(a | (circles[k] & ~(c & -c)));
    }
    acc = std::move(next);
  }
  for (Mask m : acc) toggle_term(out, m);
}

struct Obj {
  int m;
  int h;
  int q;
};

class Complex {
 public:
  std::vector<Obj> obj;
  std::vector<char> alive;
  std::vector<std::map<int, Terms>> out;
  std::vector<std::set<int>> in;
  long live = 0;

  int add(Obj o) {
    obj.push_back(o);
    alive.push_back(1);
    out.emplace_back();
    in.emplace_back();
    ++live;
    return static_cast<int>(obj.size()) - 1;
  }

  void toggle(int s, int t, Mask m) {
    auto& e = out[s][t];
    toggle_term(e, m);
    settle(s, t, e);
  }

  void add(int s, int t, const Terms& x) {
    auto& e = out[s][t];
    add_terms(e, x);
    settle(s, t, e);
  }

  void detach(int x) {
    for (auto& [t, terms] : out[x]) in[t].erase(x);
    for (int s : in[x]) out[s].erase(x);
    out[x].clear();
    in[x].clear();
    alive[x] = 0;
    --live;
  }

 private:
  void settle(int s, int t, const Terms& e) {
    if (e.empty()) {
      out[s].erase(t);
      in[t].erase(s);
    } else {
      in[t].insert(s);
    }
  }
};

struct ComposeKey {
  int a, b, c;
  Mask f, g;
  bool operator==(const ComposeKey&) const = default;
};

struct ComposeHash {
  size_t operator()(const ComposeKey& k) const {
    size_t h = std::hash<Mask>()(k.f) ^ (std::hash<Mask>()(k.g) * 0x9e3779b97f4a7c15ULL);
    h ^= (static_cast<size_t>(k.a) * 0x85ebca6bULL) + (static_cast<size_t>(k.b) << 21) +
         (static_cast<size_t>(k.c) << 42);
    return h;
  }
};

// Gluing data of one crossing onto the current boundary, fixed for a stage.
struct Glue {
  int P = 0;                      // old boundary size
  std::array<int, 4> shared{};    // old point glued to slot s, or -1
  std::array<int, 4> self{};      // slot joined to slot s inside X, or -1
  std::vector<int> vertical;      // new boundary index per node of one side, or -1
  std::vector<int> new_node;      // side node per new boundary point
  int under = 0;

  int nodes() const { return P + 4; }
  // Smoothing arc k in {0,1} of resolution r starts at this slot.
  int arc_start(int r, int k) const { return (under + r + 2 * k) % 4; }
  int arc_of(int r, int s) const { return ((s - under - r + 4) % 4) / 2; }
};

// The surface obtained by placing a cobordism between two old matchings next
// to a curtain (r_top == r_bot) or the saddle (0 -> 1) at the new crossing.
struct Shape {
  int top = 0, bot = 0;       // new matchings
  int nt = 0, lt = 0, lb = 0; // through cycles, top loops, bottom loops
  std::vector<int> chi;
  std::vector<int> old_cycle_comp;
  std::vector<int> circle_comp;
  std::unordered_map<Mask, Terms> evals;
};

class Scanner {
 public:
  Scanner(const PlanarDiagram& d, long capacity) : d_(d), capacity_(capacity) {
    int seen_base = 0;
    slot_port_.resize(d.size());
    for (int c = 0; c < d.size(); ++c)
      for (int k = 0; k < 4; ++k) {
        const int l = d.crossings[c].e[k];
        // The basepoint edge is cut into two ends that are never glued.
        slot_port_[c][k] = l == d.basepoint ? -1 - seen_base++ : l;
      }
  }

  IJRanks run(int n_plus, int n_minus) {
    cx_.add({mt_.intern({}), 0, 0});
    for (int c = 0; c < d_.size(); ++c) {
      add_crossing(c);
      simplify();
    }
    IJRanks out;
    for (size_t i = 0; i < cx_.obj.size(); ++i) {
      if (!cx_.alive[i]) continue;
      for (const auto& [t, terms] : cx_.out[i])
        if (!terms.empty() && terms.front() == 0)
          throw std::logic_error("scan: uncancelled isomorphism in the final complex");
      const auto& o = cx_.obj[i];
      ++out[{o.h - n_minus, o.q + n_plus - 2 * n_minus}];
    }
    return out;
  }

 private:
  const Cycles& cycles(int a, int b) {
    auto [it, fresh] = cycles_.try_emplace({a, b});
    if (fresh) it->second = pair_cycles(mt_[a], mt_[b]);
    return it->second;
  }

  // g o f for basis elements f : a -> b and g : b -> c.
  const Terms& compose(int a, int b, int c, Mask f, Mask g) {
    auto [it, fresh] = compose_.try_emplace(ComposeKey{a, b, c, f, g});
    if (!fresh) return it->second;
    const Cycles& c12 = cycles(a, b);
    const Cycles& c23 = cycles(b, c);
    const Cycles& c13 = cycles(a, c);
    const Matching& mb = mt_[b];
    const int pieces = c12.count + c23.count;
    UnionFind uf(pieces);
    std::vector<std::pair<int, int>> intervals;
    for (int p = 0; p < static_cast<int>(mb.size()); ++p)
      if (p < mb[p]) intervals.emplace_back(c12.of_point[p], c12.count + c23.of_point[p]);
    for (auto [x, y] : intervals) uf.unite(x, y);
    std::vector<int> comp(pieces, -1);
    std::vector<int> chi, dots;
    for (int x = 0; x < pieces; ++x) {
      const int r = uf.find(x);
      if (comp[r] < 0) {
        comp[r] = static_cast<int>(chi.size());
        chi.push_back(0);
        dots.push_back(0);
      }
      comp[x] = comp[r];
      ++chi[comp[x]];
    }
    for (auto [x, y] : intervals) --chi[comp[x]];
    for (Mask m = f; m; m &= m - 1) ++dots[comp[std::countr_zero(m)]];
    for (Mask m = g; m; m &= m - 1) ++dots[comp[c12.count + std::countr_zero(m)]];
    std::vector<int> circle_comp(c13.count, -1);
    for (int p = 0; p < static_cast<int>(mb.size()); ++p)
      if (circle_comp[c13.of_point[p]] < 0) circle_comp[c13.of_point[p]] = comp[c12.of_point[p]];
    evaluate(chi, dots, circle_comp, it->second);
    return it->second;
  }

  Glue make_glue(int c) const {
    Glue g;
    g.P = static_cast<int>(ports_.size());
    g.under = d_.crossings[c].under_slot();
    const auto& xp = slot_port_[c];
    g.shared.fill(-1);
    g.self.fill(-1);
    std::vector<char> is_shared(g.P, 0);
    for (int s = 0; s < 4; ++s) {
      if (xp[s] < 0) continue;
      auto it = std::find(ports_.begin(), ports_.end(), xp[s]);
      if (it != ports_.end()) {
        g.shared[s] = static_cast<int>(it - ports_.begin());
        is_shared[g.shared[s]] = 1;
        continue;
      }
      for (int t = 0; t < 4; ++t)
        if (t != s && xp[t] == xp[s]) g.self[s] = t;
    }
    g.vertical.assign(g.nodes(), -1);
    for (int p = 0; p < g.P; ++p)
      if (!is_shared[p]) g.new_node.push_back(p);
    for (int s = 0; s < 4; ++s)
      if (g.shared[s] < 0 && g.self[s] < 0) g.new_node.push_back(g.P + s);
    for (size_t b = 0; b < g.new_node.size(); ++b) g.vertical[g.new_node[b]] = static_cast<int>(b);
    return g;
  }

  std::vector<int> new_ports(int c, const Glue& g) const {
    std::vector<int> out;
    for (int nd : g.new_node) out.push_back(nd < g.P ? ports_[nd] : slot_port_[c][nd - g.P]);
    return out;
  }

  Shape build_shape(const Glue& g, MatchTable& next, int mtop, int mbot, int rtop, int rbot) {
    const Matching& A = mt_[mtop];
    const Matching& B = mt_[mbot];
    const Cycles& cyc = cycles(mtop, mbot);
    const int P = g.P, N = g.nodes();
    const bool saddle = rtop != rbot;
    const int npieces = cyc.count + (saddle ? 1 : 2);
    auto xpiece = [&](int r, int s) { return cyc.count + (saddle ? 0 : g.arc_of(r, s)); };

    UnionFind uf(npieces);
    std::vector<std::pair<int, int>> intervals;
    for (int s = 0; s < 4; ++s) {
      if (g.shared[s] >= 0) intervals.emplace_back(cyc.of_point[g.shared[s]], xpiece(rtop, s));
      if (g.self[s] > s) intervals.emplace_back(xpiece(rtop, s), xpiece(rtop, g.self[s]));
    }
    for (auto [x, y] : intervals) uf.unite(x, y);
    Shape sh;
    std::vector<int> comp(npieces, -1);
    for (int x = 0; x < npieces; ++x) {
      const int r = uf.find(x);
      if (comp[r] < 0) {
        comp[r] = static_cast<int>(sh.chi.size());
        sh.chi.push_back(0);
      }
      comp[x] = comp[r];
      ++sh.chi[comp[x]];
    }
    for (auto [x, y] : intervals) --sh.chi[comp[x]];
    sh.old_cycle_comp.assign(comp.begin(), comp.begin() + cyc.count);

    // Boundary graph: every node has exactly two edges.
    struct Edge {
      int a, b, piece, vert;
    };
    std::vector<Edge> edges;
    std::vector<std::array<int, 2>> adj(2 * N, {-1, -1});
    auto add_edge = [&](int a, int b, int piece, int vert) {
      const int id = static_cast<int>(edges.size());
      edges.push_back({a, b, piece, vert});
      adj[a][adj[a][0] < 0 ? 0 : 1] = id;
      adj[b][adj[b][0] < 0 ? 0 : 1] = id;
    };
    for (int p = 0; p < P; ++p) {
      if (p < A[p]) add_edge(p, A[p], cyc.of_point[p], -1);
      if (p < B[p]) add_edge(N + p, N + B[p], cyc.of_point[p], -1);
    }
    for (int side = 0; side < 2; ++side) {
      const int r = side == 0 ? rtop : rbot, off = side * N;
      for (int k = 0; k < 2; ++k) {
        const int s = g.arc_start(r, k);
        add_edge(off + P + s, off + P + (s + 1) % 4, xpiece(r, s), -1);
      }
      for (int s = 0; s < 4; ++s) {
        if (g.shared[s] >= 0) add_edge(off + g.shared[s], off + P + s, -1, -1);
        if (g.self[s] > s) add_edge(off + P + s, off + P + g.self[s], -1, -1);
      }
    }
    for (size_t b = 0; b < g.new_node.size(); ++b)
      add_edge(g.new_node[b], N + g.new_node[b], -1, static_cast<int>(b));

    struct Cyc {
      int min_vert = INT_MAX, min_node = INT_MAX, piece = -1;
    };
    std::vector<Cyc> through, top_loops, bot_loops;
    std::vector<char> used(edges.size(), 0);
    for (size_t e0 = 0; e0 < edges.size(); ++e0) {
      if (used[e0]) continue;
      Cyc cy;
      int node = edges[e0].a;
      for (int e = static_cast<int>(e0); !used[e];) {
        used[e] = 1;
        const Edge& ed = edges[e];
        if (ed.vert >= 0) cy.min_vert = std::min(cy.min_vert, ed.vert);
        if (ed.piece >= 0) cy.piece = ed.piece;
        cy.min_node = std::min(cy.min_node, node);
        node = ed.a == node ? ed.b : ed.a;
        e = adj[node][0] == e ? adj[node][1] : adj[node][0];
      }
      if (cy.min_vert != INT_MAX)
        through.push_back(cy);
      else if (cy.min_node < N)
        top_loops.push_back(cy);
      else
        bot_loops.push_back(cy);
    }
    auto by_vert = [](const Cyc& x, const Cyc& y) { return x.min_vert < y.min_vert; };
    auto by_node = [](const Cyc& x, const Cyc& y) { return x.min_node < y.min_node; };
    std::sort(through.begin(), through.end(), by_vert);
    std::sort(top_loops.begin(), top_loops.end(), by_node);
    std::sort(bot_loops.begin(), bot_loops.end(), by_node);
    sh.nt = static_cast<int>(through.size());
    sh.lt = static_cast<int>(top_loops.size());
    sh.lb = static_cast<int>(bot_loops.size());
    if (sh.nt + sh.lt + sh.lb > kMaxBits || cyc.count > kMaxBits)
      throw CapacityError("scan: boundary too wide for the cobordism encoding");
    for (const auto* list : {&through, &top_loops, &bot_loops})
      for (const auto& cy : *list) sh.circle_comp.push_back(comp[cy.piece]);

    // New matchings: follow each side from a new boundary point to the next.
    const int Pn = static_cast<int>(g.new_node.size());
    auto side_matching = [&](int off) {
      Matching m(Pn);
      for (int b = 0; b < Pn; ++b) {
        int node = off + g.new_node[b];
        int e = edges[adj[node][0]].vert >= 0 ? adj[node][1] : adj[node][0];
        for (;;) {
          node = edges[e].a == node ? edges[e].b : edges[e].a;
          const int other = adj[node][0] == e ? adj[node][1] : adj[node][0];
          if (edges[other].vert >= 0) {
            m[b] = static_cast<uint8_t>(edges[other].vert);
            break;
          }
          e = other;
        }
      }
      return m;
    };
    sh.top = next.intern(side_matching(0));
    sh.bot = next.intern(side_matching(N));
    return sh;
  }

  Shape& shape(const Glue& g, MatchTable& next, int mtop, int mbot, int rtop, int rbot) {
    auto key = std::make_tuple(mtop, mbot, rtop, rbot);
    auto it = shapes_.find(key);
    if (it == shapes_.end())
      it = shapes_.emplace(key, build_shape(g, next, mtop, mbot, rtop, rbot)).first;
    return it->second;
  }

  static const Terms& eval(Shape& sh, Mask f) {
    auto [it, fresh] = sh.evals.try_emplace(f);
    if (fresh) {
      std::vector<int> dots(sh.chi.size(), 0);
      for (Mask m = f; m; m &= m - 1) ++dots[sh.old_cycle_comp[std::countr_zero(m)]];
      evaluate(sh.chi, dots, sh.circle_comp, it->second);
    }
    return it->second;
  }

  void add_crossing(int c) {
    const Glue g = make_glue(c);
    MatchTable next;
    Complex nc;
    shapes_.clear();
    const int n_old = static_cast<int>(cx_.obj.size());
    std::vector<std::array<int, 2>> base(n_old, {-1, -1});
    for (int i = 0; i < n_old; ++i) {
      if (!cx_.alive[i]) continue;
      const Obj& o = cx_.obj[i];
      for (int r = 0; r < 2; ++r) {
        Shape& sh = shape(g, next, o.m, o.m, r, r);
        base[i][r] = static_cast<int>(nc.obj.size());
        for (int sigma = 0; sigma < (1 << sh.lt); ++sigma)
          nc.add({sh.top, o.h + r, o.q + r + sh.lt - 2 * std::popcount(unsigned(sigma))});
      }
      if (nc.live > capacity_)
        throw CapacityError("scan: complex exceeds " + std::to_string(capacity_) + " objects");
    }

    auto emit = [&](Shape& sh, Mask f, int src, int dst) {
      const Mask through = sh.nt == 64 ? ~Mask{0} : (Mask{1} << sh.nt) - 1;
      const Mask top = (Mask{1} << sh.lt) - 1;
      for (Mask m : eval(sh, f)) {
        const Mask t_bits = (m >> sh.nt) & top;
        const Mask b_bits = m >> (sh.nt + sh.lt);
        // A source loop maps to its q+1 copy when dotted, a target loop
        // receives its q+1 copy when undotted.
        const int sigma = static_cast<int>(~t_bits & top);
        nc.toggle(src + sigma, dst + static_cast<int>(b_bits), m & through);
      }
    };
    for (int i = 0; i < n_old; ++i) {
      if (!cx_.alive[i]) continue;
      for (const auto& [j, terms] : cx_.out[i])
        for (int r = 0; r < 2; ++r) {
          Shape& sh = shape(g, next, cx_.obj[i].m, cx_.obj[j].m, r, r);
          for (Mask f : terms) emit(sh, f, base[i][r], base[j][r]);
        }
      Shape& sh = shape(g, next, cx_.obj[i].m, cx_.obj[i].m, 0, 1);
      emit(sh, 0, base[i][0], base[i][1]);
    }

    ports_ = new_ports(c, g);
    mt_ = std::move(next);
    cx_ = std::move(nc);
    shapes_.clear();
    cycles_.clear();
    compose_.clear();
  }

  bool is_iso(int s, int t, const Terms& e) const {
    const Obj& a = cx_.obj[s];
    const Obj& b = cx_.obj[t];
    return a.m == b.m && a.q == b.q && e.size() == 1 && e.front() == 0;
  }

  // Gaussian elimination: cancel s -> t (an identity) and add the zig-zag
  // terms c -> t -> s -> d to every c -> d.
  void simplify() {
    std::set<int> work;
    for (int i = 0; i < static_cast<int>(cx_.obj.size()); ++i)
      if (cx_.alive[i]) work.insert(i);
    while (!work.empty()) {
      const int s = *work.begin();
      work.erase(work.begin());
      if (!cx_.alive[s]) continue;
      int t = -1;
      for (const auto& [x, e] : cx_.out[s])
        if (is_iso(s, x, e)) {
          t = x;
          break;
        }
      if (t < 0) continue;
      std::vector<std::pair<int, Terms>> ins, outs;
      for (int x : cx_.in[t])
        if (x != s) ins.emplace_back(x, cx_.out[x].at(t));
      for (const auto& [x, e] : cx_.out[s])
        if (x != t) outs.emplace_back(x, e);
      const int mb = cx_.obj[s].m;
      cx_.detach(s);
      cx_.detach(t);
      for (const auto& [x, delta] : ins) {
        const int ma = cx_.obj[x].m;
        for (const auto& [y, gamma] : outs) {
          const int mc = cx_.obj[y].m;
          Terms sum;
          for (Mask f : delta)
            for (Mask h : gamma) add_terms(sum, compose(ma, mb, mc, f, h));
          if (!sum.empty()) cx_.add(x, y, sum);
        }
        work.insert(x);
      }
    }
  }

  const PlanarDiagram& d_;
  long capacity_;
  std::vector<std::array<int, 4>> slot_port_;
  std::vector<int> ports_;
  MatchTable mt_;
  Complex cx_;
  std::map<std::pair<int, int>, Cycles> cycles_;
  std::unordered_map<ComposeKey, Terms, ComposeHash> compose_;
  std::map<std::tuple<int, int, int, int>, Shape> shapes_;
};

}  // namespace

IJRanks scan_ij(const OrientedDiagram& od, long capacity) {
  Scanner sc(od.diagram, capacity);
  return sc.run(od.n_plus, od.n_minus);
}

}  // namespace khw::detail
