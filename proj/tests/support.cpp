#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "khw/error.hpp"

namespace khw::test {

std::filesystem::path corpus_dir() { return KHW_CORPUS_DIR; }

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

// Moves on braid words whose closures are Reidemeister-equivalent.
BraidWord random_move(BraidWord w, std::mt19937& rng) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  const int kind = pick(5);
  const int len = static_cast<int>(w.letters.size());
  if (kind == 0) {  // R2: insert s s^-1
    const int k = 1 + pick(w.strands - 1);
    const int at = pick(len + 1);
    const int sgn = pick(2) ? 1 : -1;
    w.letters.insert(w.letters.begin() + at, {sgn * k, -sgn * k});
  } else if (kind == 1) {  // R3: s_i s_j s_i = s_j s_i s_j with |i - j| = 1, positive letters
    for (int at = 0; at + 2 < len; ++at) {
      int a = w.letters[at], b = w.letters[at + 1], c = w.letters[at + 2];
      if (a == c && a > 0 && b > 0 && std::abs(a - b) == 1) {
        w.letters[at] = b;
        w.letters[at + 1] = a;
        w.letters[at + 2] = b;
        return w;
      }
    }
    const int k = 1 + pick(w.strands - 1);
    if (k + 1 < w.strands) {
      w.letters.insert(w.letters.end(), {k, k + 1, k, -(k + 1), -k, -(k + 1)});
    }
  } else if (kind == 2) {  // conjugation
    if (len > 0) std::rotate(w.letters.begin(), w.letters.begin() + pick(len), w.letters.end());
  } else if (kind == 3) {  // Markov stabilisation
    w.letters.push_back(pick(2) ? w.strands : -w.strands);
    ++w.strands;
  } else {  // far commutation
    for (int at = 0; at + 1 < len; ++at)
      if (std::abs(std::abs(w.letters[at]) - std::abs(w.letters[at + 1])) >= 2) {
        std::swap(w.letters[at], w.letters[at + 1]);
        break;
      }
  }
  return w;
}

// R1 on a PD code: a kink spliced into the edge `e`.
PlanarDiagram add_kink(const PlanarDiagram& d, int e, bool odd_over) {
  PlanarDiagram out = d;
  int top = 0;
  for (const auto& x : d.crossings)
    for (int l : x.e) top = std::max(top, l);
  const int f = top + 1, loop = top + 2;
  bool moved = false;
  for (auto& x : out.crossings)
    for (auto& l : x.e)
      if (!moved && l == e) {
        l = f;
        moved = true;
      }
  Crossing k;
  k.e = {e, f, loop, loop};
  k.odd_over = odd_over;
  out.crossings.push_back(k);
  return out;
}

BraidWord random_knot_word(std::mt19937& rng) {
  for (;;) {
    const int s = std::uniform_int_distribution<int>(2, 4)(rng);
    const int len = std::uniform_int_distribution<int>(3, 7)(rng);
    BraidWord w{s, {}};
    for (int i = 0; i < len; ++i) {
      int k = std::uniform_int_distribution<int>(1, s - 1)(rng);
      w.letters.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? k : -k);
    }
    std::vector<bool> used(s, false);
    for (int k : w.letters) used[std::abs(k)] = true;
    bool all = true;
    for (int k = 1; k < s; ++k) all = all && used[k];
    if (all && count_components(braid_closure(w)) == 1) return w;
  }
}

std::vector<std::filesystem::path> files_with(const std::string& ext) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir()))
    if (entry.path().extension() == ext) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

const std::vector<NamedDiagram>& corpus_diagrams() {
  static const auto all = [] {
    std::vector<NamedDiagram> out;
    for (const auto& p : files_with(".pd"))
      out.push_back({p.stem().string(), parse_diagram(read_text(p))});
    return out;
  }();
  return all;
}

const std::vector<NamedTangle>& corpus_tangles() {
  static const auto all = [] {
    std::vector<NamedTangle> out;
    for (const auto& p : files_with(".tangle")) {
      Tangle t = parse_tangle(read_text(p));
      const auto cal = calibrate(t);
      if (!cal.ok) throw std::runtime_error("corpus tangle " + p.string() + " does not calibrate");
      Tangle c = cal.offset == 0 ? t : twist(t, cal.offset);
      c.name = t.name;
      out.push_back({p.stem().string(), c, cal.offset});
    }
    return out;
  }();
  return all;
}

const Tangle& corpus_tangle(const std::string& name) {
  for (const auto& t : corpus_tangles())
    if (t.name == name) return t.tangle;
  throw std::runtime_error("no corpus tangle " + name);
}

PlanarDiagram corpus_diagram(const std::string& name) {
  for (const auto& d : corpus_diagrams())
    if (d.name == name) return d.diagram;
  throw std::runtime_error("no corpus diagram " + name);
}

std::vector<long> column_totals(const BigradedRanks& r) { return width(r).column_ranks; }

std::map<int, long> kauffman_bracket(const PlanarDiagram& d) {
  const int n = d.size();
  if (n > 20) throw std::runtime_error("bracket oracle limited to 20 crossings");
  std::vector<int> labels;
  for (const auto& x : d.crossings) labels.insert(labels.end(), x.e.begin(), x.e.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto index = [&](int l) {
    return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };
  // (-A^2 - A^-2)^k as exponent -> coefficient.
  auto loop_power = [](int k) {
    std::map<int, long> p = {{0, 1}};
    for (int i = 0; i < k; ++i) {
      std::map<int, long> q;
      for (auto [e, c] : p) {
        q[e + 2] -= c;
        q[e - 2] -= c;
      }
      p = q;
    }
    return p;
  };
  std::map<int, long> total;
  for (long mask = 0; mask < (1L << n); ++mask) {
    std::vector<int> uf(labels.size());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    auto join = [&](int a, int b) { uf[find(index(a))] = find(index(b)); };
    int a_count = 0;
    for (int c = 0; c < n; ++c) {
      const auto& x = d.crossings[c];
      const int u = x.under_slot();
      const bool b_smoothing = (mask >> c) & 1;
      const int s = b_smoothing ? (u + 1) % 4 : u;
      join(x.e[s], x.e[(s + 1) % 4]);
      join(x.e[(s + 2) % 4], x.e[(s + 3) % 4]);
      if (!b_smoothing) ++a_count;
    }
    int loops = d.free_loops;
    for (size_t i = 0; i < labels.size(); ++i) loops += find(static_cast<int>(i)) == static_cast<int>(i);
    const int shift = a_count - (n - a_count);
    for (auto [e, c] : loop_power(loops - 1)) total[e + shift] += c;
  }
  std::erase_if(total, [](const auto& kv) { return kv.second == 0; });
  return total;
}

std::map<int, long> jones_from_bracket(const PlanarDiagram& d) {
  // Writhe of the library orientation; for knots it does not depend on it.
  const auto od = orient(d);
  const int w = od.n_plus - od.n_minus;
  const long sign = (w % 2 == 0) ? 1 : -1;
  std::map<int, long> v;
  for (auto [e, c] : kauffman_bracket(d)) {
    // (-A^3)^(-w) A^e with A = t^(-1/4): exponent of t^(1/2) is (3w - e)/2.
    const int a_exp = e - 3 * w;
    if (a_exp % 2 != 0) throw std::runtime_error("odd A exponent in bracket");
    v[-a_exp / 2] += sign * c;
  }
  std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
  return v;
}

std::vector<ReidemeisterPair> reidemeister_pairs(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<ReidemeisterPair> out;
  for (int trial = 0; trial < count; ++trial) {
    ReidemeisterPair pr;
    pr.word = random_knot_word(rng);
    pr.moved = pr.word;
    for (int m = 0; m < 3; ++m) pr.moved = random_move(pr.moved, rng);
    pr.before = braid_closure(pr.word);
    pr.after = braid_closure(pr.moved);
    if (trial % 2 == 0) {
      const auto labels = pr.after.edge_labels();
      const int e = labels[std::uniform_int_distribution<size_t>(0, labels.size() - 1)(rng)];
      pr.after = add_kink(pr.after, e, trial % 4 == 0);
    }
    out.push_back(std::move(pr));
  }
  return out;
}

}  // namespace khw::test
