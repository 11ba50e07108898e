#include "khw/tangle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "khw/error.hpp"
#include "khw/goeritz.hpp"
#include "khw/khovanov.hpp"
#include "text_util.hpp"

namespace khw {

Slope cf_evaluate(const std::vector<int>& terms) {
  // Fold from the right: x = a + 1/x with x = p/q.
  long p = 1, q = 0;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const long np = static_cast<long>(*it) * p + q;
    q = p;
    p = np;
  }
  return make_slope(p, q);
}

ContinuedFraction cf_expand(const Slope& s) {
  ContinuedFraction cf;
  cf.value = s;
  long p = s.p, q = s.q;
  if (p < 0) {
    cf.mirrored = true;
    p = -p;
  }
  while (q != 0) {
    cf.terms.push_back(static_cast<int>(p / q));
    const long r = p % q;
    p = q;
    q = r;
  }
  return cf;
}

CfResolution cf_resolve(const ContinuedFraction& cf) {
  const size_t r = cf.terms.size();
  if (r == 0) throw InputError("1/0 has no terminal crossing");
  if (cf.terms.back() < 1) throw InputError("the last term must be positive");
  std::vector<int> shorter(cf.terms.begin(), cf.terms.end() - 1);
  std::vector<int> lowered = cf.terms;
  --lowered.back();
  CfResolution res;
  res.r_odd = r % 2 == 1;
  auto normal = [&](const std::vector<int>& t) {
    auto out = cf_expand(cf_evaluate(t));
    out.mirrored = cf.mirrored;
    return out;
  };
  res.zero = normal(res.r_odd ? lowered : shorter);
  res.one = normal(res.r_odd ? shorter : lowered);
  return res;
}

RationalBraid braid_of_cf(const ContinuedFraction& cf) {
  RationalBraid rb;
  rb.word.strands = 3;
  for (size_t i = 0; i < cf.terms.size(); ++i) {
    const int a = cf.terms[i];
    const int letter = i % 2 == 0 ? 2 : -1;
    const int sign = a < 0 ? -1 : 1;
    rb.word.letters.insert(rb.word.letters.end(), std::abs(a), sign * letter);
  }
  rb.closure = cf.terms.size() % 2 == 1 ? Closure::odd : Closure::even;
  return rb;
}

namespace {

int max_label(const Tangle& t) {
  int m = -1;
  for (const auto& x : t.body.crossings)
    for (int e : x.e) m = std::max(m, e);
  for (int e : t.ends) m = std::max(m, e);
  return m;
}

// Collects crossings and label identifications, then merges glued labels.
class Assembly {
 public:
  explicit Assembly(int next) : next_(next) {}

  void add(const Crossing& x) { xs_.push_back(x); }
  void glue(int a, int b) { glue_.emplace_back(a, b); }

  // Braid letter k on adjacent entries of cur, strands running upwards and
  // cur listing them left to right.
  void letter(std::vector<int>& cur, int k) {
    const size_t i = static_cast<size_t>(std::abs(k) - 1);
    const int bl = cur[i], br = cur[i + 1], tl = next_++, tr = next_++;
    Crossing x;
    if (k > 0)
      x.e = {br, tr, tl, bl};
    else
      x.e = {bl, br, tr, tl};
    xs_.push_back(x);
    cur[i] = tl;
    cur[i + 1] = tr;
  }

  // Labels in `keep` are open ends: their classes never count as loops.
  // They are rewritten to the surviving label of their class.
  PlanarDiagram finish(const std::vector<int*>& keep) {
    std::map<int, int> parent;
    auto find = [&](int x) {
      parent.emplace(x, x);
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto& x : xs_)
      for (int e : x.e) find(e);
    for (int* k : keep) find(*k);
    for (auto [a, b] : glue_) {
      const int ra = find(a), rb = find(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::map<int, int> uses;
    std::set<int> open;
    for (auto& [label, p] : parent) uses[find(label)] += 0;
    for (auto& x : xs_)
      for (int e : x.e) ++uses[find(e)];
    for (int* k : keep) open.insert(find(*k));
    PlanarDiagram d;
    for (auto [root, n] : uses)
      if (n == 0 && !open.count(root)) ++d.free_loops;
    for (auto x : xs_) {
      for (int& e : x.e) e = find(e);
      d.crossings.push_back(x);
    }
    for (int* k : keep) *k = find(*k);
    return d;
  }

 private:
  int next_;
  std::vector<Crossing> xs_;
  std::vector<std::pair<int, int>> glue_;
};

std::map<int, int> label_uses(const PlanarDiagram& d) {
  std::map<int, int> uses;
  for (const auto& x : d.crossings)
    for (int e : x.e) ++uses[e];
  return uses;
}

}  // namespace

Tangle trivial_tangle() {
  Tangle t;
  t.name = "trivial";
  t.ends = {0, 0, 1, 1};
  return t;
}

Tangle braid_gap_tangle(const BraidWord& w, int gap) {
  const int s = w.strands;
  if (gap < 1 || gap >= s)
    throw InputError("gap " + std::to_string(gap) + " out of range for " + std::to_string(s) +
                     " strands");
  Assembly a(s);
  std::vector<int> cur(s);
  for (int i = 0; i < s; ++i) cur[i] = i;
  for (int k : w.letters) {
    if (k == 0 || std::abs(k) >= s)
      throw InputError("braid letter " + std::to_string(k) + " out of range");
    a.letter(cur, k);
  }
  for (int i = 0; i < s; ++i)
    if (i != gap - 1 && i != gap) a.glue(cur[i], i);
  Tangle t;
  t.ends[NE] = cur[gap - 1];
  t.ends[NW] = gap - 1;
  t.ends[SW] = gap;
  t.ends[SE] = cur[gap];
  std::vector<int*> keep;
  for (int& e : t.ends) keep.push_back(&e);
  t.body = a.finish(keep);
  t.body.basepoint = -1;
  return t;
}

Tangle mirror(const Tangle& t) {
  Tangle out = t;
  out.body = mirror(t.body);
  if (!out.name.empty()) out.name = "mirror " + out.name;
  return out;
}

Tangle twist(const Tangle& t, int f) {
  if (f == 0) return t;
  Assembly a(max_label(t) + 1);
  for (const auto& x : t.body.crossings) a.add(x);
  std::vector<int> cur = {t.ends[NE], t.ends[SE]};
  for (int i = 0; i < std::abs(f); ++i) a.letter(cur, f > 0 ? 1 : -1);
  Tangle out = t;
  out.ends[NE] = cur[0];
  out.ends[SE] = cur[1];
  std::vector<int*> keep;
  for (int& e : out.ends) keep.push_back(&e);
  out.body = a.finish(keep);
  out.body.free_loops += t.body.free_loops;
  out.body.basepoint = -1;
  return out;
}

std::array<int, 4> end_pairing(const Tangle& t) {
  const auto& xs = t.body.crossings;
  std::map<int, std::vector<int>> where;  // label -> half-edges
  for (int c = 0; c < static_cast<int>(xs.size()); ++c)
    for (int k = 0; k < 4; ++k) where[xs[c].e[k]].push_back(4 * c + k);
  std::array<int, 4> pair{-1, -1, -1, -1};
  for (int i = 0; i < 4; ++i) {
    if (pair[i] >= 0) continue;
    const int label = t.ends[i];
    auto it = where.find(label);
    int j = -1;
    if (it == where.end()) {
      for (int k = 0; k < 4; ++k)
        if (k != i && t.ends[k] == label) j = k;
    } else {
      // Walk straight through crossings until another end is reached.
      int h = it->second.front();
      for (size_t guard = 0; guard <= 4 * xs.size(); ++guard) {
        const int out = 4 * (h / 4) + (h % 4 + 2) % 4;
        const int next = xs[out / 4].e[out % 4];
        const auto& hs = where[next];
        int other = -1;
        for (int x : hs)
          if (x != out) other = x;
        if (other < 0) {
          for (int k = 0; k < 4; ++k)
            if (k != i && t.ends[k] == next) j = k;
          break;
        }
        h = other;
      }
    }
    if (j < 0) throw InputError("tangle end " + std::to_string(i) + " does not reach another end");
    pair[i] = j;
    pair[j] = i;
  }
  return pair;
}

void validate(const Tangle& t) {
  const auto uses = label_uses(t.body);
  std::map<int, int> end_count;
  for (int e : t.ends) ++end_count[e];
  for (auto [label, n] : end_count) {
    auto it = uses.find(label);
    const int u = it == uses.end() ? 0 : it->second;
    if (!((n == 1 && u == 1) || (n == 2 && u == 0)))
      throw InputError("end label " + std::to_string(label) +
                       " must occur once in the body, or twice among the ends for a bare arc");
  }
  for (auto [label, n] : uses)
    if (!end_count.count(label) && n != 2)
      throw InputError("edge " + std::to_string(label) + " occurs " + std::to_string(n) +
                       " times");
  end_pairing(t);
  if (t.body.size() == 0) return;
  // Contracting the outside of the ball to one vertex must give a planar map.
  PlanarDiagram closed = t.body;
  Crossing v;
  v.e = {t.ends[NE], t.ends[SE], t.ends[SW], t.ends[NW]};
  closed.crossings.push_back(v);
  if (!is_planar(closed)) throw InputError("tangle ends are not in counterclockwise order NE NW SW SE");
}

namespace {

struct Built {
  PlanarDiagram diagram;
  int terminal = -1;
};

Built build_closure(const Tangle& t, const RationalBraid& rb) {
  Assembly a(max_label(t) + 1);
  for (const auto& x : t.body.crossings) a.add(x);
  // Positions 3, 2, 1 sit at NE, SE, SW; seen from outside with strands
  // leaving the ball they run left to right in that order.
  std::vector<int> cur = {t.ends[NE], t.ends[SE], t.ends[SW]};
  for (int letter : rb.word.letters) {
    const int k = std::abs(letter) == 2 ? 1 : 2;
    a.letter(cur, letter > 0 ? k : -k);
  }
  int base = 0;
  if (rb.closure == Closure::odd) {
    a.glue(cur[2], cur[1]);
    a.glue(cur[0], t.ends[NW]);
    base = cur[0];
  } else {
    a.glue(cur[1], cur[0]);
    a.glue(cur[2], t.ends[NW]);
    base = cur[2];
  }
  Built out;
  out.diagram = a.finish({&base});
  out.diagram.free_loops += t.body.free_loops;
  // A closure arc that became a crossingless loop carries the mark along.
  bool on_edge = false;
  for (const auto& x : out.diagram.crossings)
    for (int e : x.e) on_edge = on_edge || e == base;
  if (!on_edge) {
    ++out.diagram.free_loops;
    out.diagram.basepoint = -1;
  } else {
    out.diagram.basepoint = base;
  }
  if (!rb.word.letters.empty()) out.terminal = out.diagram.size() - 1;
  return out;
}

Built build_tau(const Tangle& t, const Slope& s) {
  Built out = build_closure(t, braid_of_cf(cf_expand(s)));
  out.diagram.label = (t.name.empty() ? std::string("tau") : t.name) + " at " + to_string(s);
  return out;
}

}  // namespace

PlanarDiagram close_with(const Tangle& t, const RationalBraid& rb) {
  for (int letter : rb.word.letters)
    if (std::abs(letter) != 1 && std::abs(letter) != 2)
      throw InputError("rational braid letters are 1 or 2");
  return build_closure(t, rb).diagram;
}

PlanarDiagram tau(const Tangle& t, const Slope& s) {
  if (s.negative()) {
    auto d = mirror(build_tau(mirror(t), -s).diagram);
    d.label = (t.name.empty() ? std::string("tau") : t.name) + " at " + to_string(s);
    return d;
  }
  return build_tau(t, s).diagram;
}

int terminal_crossing(const Tangle& t, const Slope& s) {
  return build_tau(s.negative() ? mirror(t) : t, s.negative() ? -s : s).terminal;
}

Calibration calibrate(const Tangle& t, int lo, int hi) {
  Calibration cal;
  if (lo > hi) throw InputError("empty calibration window");
  std::map<int, long> det;
  for (int m = lo - 2; m <= hi + 2; ++m) det[m] = determinant(tau(t, make_slope(m, 1)));
  for (int f = lo; f <= hi; ++f) {
    bool match = true;
    for (int n = -2; n <= 2 && match; ++n) match = det[f + n] == std::abs(n);
    if (!match) continue;
    KhOptions opt;
    if (reduced_kh(tau(t, Slope{1, 0}), opt).total() != 1) {
      cal.reason = "tau(1/0) is not the trivial knot";
      break;
    }
    cal.ok = true;
    cal.offset = f;
    return cal;
  }
  for (int m = lo; m <= hi; ++m) cal.determinants.push_back(det[m]);
  if (cal.reason.empty())
    cal.reason = "no offset in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                 "] gives det(tau(n + f)) = |n|";
  return cal;
}

Tangle parse_tangle(std::string_view text) {
  auto lines = detail::content_lines(text);
  if (lines.empty() || !detail::starts_with_word(lines.front().text, "tangle"))
    throw ParseError("expected 'tangle' header");
  Tangle t;
  std::optional<BraidWord> braid;
  int gap = 0;
  bool pd = false, have_ends = false, first_over = false;
  std::vector<Crossing> xs;
  SlopeSystem sys;
  bool have_sys = false;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    const std::string where = "line " + std::to_string(ln.number) + ": ";
    if (detail::starts_with_word(ln.text, "braid")) {
      braid = parse_braid(ln.text);
      continue;
    }
    if (detail::starts_with_word(ln.text, "pd")) {
      pd = true;
      continue;
    }
    if (ln.text.find(':') == std::string::npos) {
      if (!pd) throw ParseError(where + "crossing outside a 'pd' block");
      auto nums = detail::crossing_labels(ln.text);
      if (nums.size() != 4) throw ParseError(where + "a crossing needs four edge labels");
      Crossing x;
      std::copy(nums.begin(), nums.end(), x.e.begin());
      xs.push_back(x);
      continue;
    }
    auto [key, val] = detail::key_value(ln);
    if (key == "name") {
      t.name = val;
    } else if (key == "provenance") {
      t.provenance = val;
    } else if (key == "gap") {
      gap = detail::parse_int(val, "gap");
    } else if (key == "first") {
      if (val != "under" && val != "over") throw ParseError(where + "first must be 'under' or 'over'");
      first_over = val == "over";
    } else if (key == "ends") {
      auto toks = detail::split_ws(val);
      if (toks.size() != 4) throw ParseError(where + "ends needs four labels (NE NW SW SE)");
      for (int k = 0; k < 4; ++k) t.ends[k] = detail::parse_int(toks[k], "end label");
      have_ends = true;
    } else if (key == "c_M") {
      sys.c = detail::parse_int(val, "c_M");
      if (sys.c < 1) throw ParseError(where + "c_M must be positive");
      have_sys = true;
    } else if (key == "lambda") {
      auto toks = detail::split_ws(val);
      if (toks.size() != 2) throw ParseError(where + "lambda needs two integers");
      sys.lambda_x = detail::parse_int(toks[0], "lambda");
      sys.lambda_y = detail::parse_int(toks[1], "lambda");
      if (std::gcd(sys.lambda_x, sys.lambda_y) != 1)
        throw ParseError(where + "lambda must be primitive");
      have_sys = true;
    } else {
      throw ParseError(where + "unknown key '" + key + "'");
    }
  }
  const std::string name = t.name, prov = t.provenance;
  if (braid && pd) throw ParseError("a tangle is either a braid or a pd block, not both");
  try {
    if (braid) {
      if (gap == 0) throw ParseError("braid tangles need 'gap: k'");
      t = braid_gap_tangle(*braid, gap);
    } else {
      if (!have_ends) throw ParseError("pd tangles need 'ends: NE NW SW SE'");
      for (auto& x : xs) x.odd_over = !first_over;
      t.body.crossings = xs;
      t.body.basepoint = -1;
    }
    validate(t);
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
  t.name = name;
  t.provenance = prov;
  if (have_sys) t.system = sys;
  return t;
}

std::string write_tangle(const Tangle& t) {
  std::ostringstream os;
  os << "tangle\n";
  if (!t.name.empty()) os << "name: " << t.name << "\n";
  if (!t.provenance.empty()) os << "provenance: " << t.provenance << "\n";
  if (t.system) {
    os << "c_M: " << t.system->c << "\n";
    os << "lambda: " << t.system->lambda_x << " " << t.system->lambda_y << "\n";
  }
  os << "ends: " << t.ends[NE] << " " << t.ends[NW] << " " << t.ends[SW] << " " << t.ends[SE]
     << "\n";
  os << "pd\n";
  for (const auto& x : t.body.crossings) {
    const int s = x.under_slot();
    os << "X[" << x.e[s] << "," << x.e[(s + 1) % 4] << "," << x.e[(s + 2) % 4] << ","
       << x.e[(s + 3) % 4] << "]\n";
  }
  return os.str();
}

}  // namespace khw
