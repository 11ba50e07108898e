#include "khw/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "khw/error.hpp"
#include "diagram_detail.hpp"
#include "text_util.hpp"

namespace khw {

namespace detail {

std::vector<int> partner_table(const PlanarDiagram& d) {
  std::map<int, std::vector<int>> ends;
  for (int c = 0; c < d.size(); ++c)
    for (int k = 0; k < 4; ++k) ends[d.crossings[c].e[k]].push_back(half_edge(c, k));
  std::vector<int> partner(4 * d.size(), -1);
  for (auto& [label, hs] : ends) {
    if (hs.size() != 2)
      throw InputError("edge " + std::to_string(label) + " occurs " +
                       std::to_string(hs.size()) + " times");
    partner[hs[0]] = hs[1];
    partner[hs[1]] = hs[0];
  }
  return partner;
}

std::vector<int> trace_faces(const PlanarDiagram& d, int& face_count) {
  const int n = d.size();
  auto partner = partner_table(d);
  std::vector<int> face(4 * n, -1);
  face_count = 0;
  for (int h0 = 0; h0 < 4 * n; ++h0) {
    if (face[h0] >= 0) continue;
    for (int h = h0; face[h] < 0;) {
      face[h] = face_count;
      int p = partner[h];
      h = half_edge(p / 4, (p % 4 + 1) % 4);
    }
    ++face_count;
  }
  // Leaving along slot k closes the corner between slots k-1 and k.
  std::vector<int> corner(4 * n);
  for (int h = 0; h < 4 * n; ++h) corner[h] = face[half_edge(h / 4, (h % 4 + 1) % 4)];
  return corner;
}

}  // namespace detail

namespace {

using detail::partner_table;

int find(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

void relabel(PlanarDiagram& d, int from, int to) {
  for (auto& x : d.crossings)
    for (auto& e : x.e)
      if (e == from) e = to;
  if (d.basepoint == from) d.basepoint = to;
}

}  // namespace

std::vector<int> PlanarDiagram::edge_labels() const {
  std::vector<int> out;
  for (const auto& x : crossings) out.insert(out.end(), x.e.begin(), x.e.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int count_pieces(const PlanarDiagram& d) {
  const int n = d.size();
  if (n == 0) return 0;
  auto partner = partner_table(d);
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  for (int h = 0; h < 4 * n; ++h) uf[find(uf, h / 4)] = find(uf, partner[h] / 4);
  int pieces = 0;
  for (int c = 0; c < n; ++c) pieces += find(uf, c) == c;
  return pieces;
}

bool is_planar(const PlanarDiagram& d) {
  const int n = d.size();
  if (n == 0) return true;
  auto partner = partner_table(d);
  std::vector<char> seen(4 * n, 0);
  int faces = 0;
  for (int h0 = 0; h0 < 4 * n; ++h0) {
    if (seen[h0]) continue;
    ++faces;
    for (int h = h0; !seen[h];) {
      seen[h] = 1;
      int p = partner[h];
      h = half_edge(p / 4, (p % 4 + 1) % 4);
    }
  }
  return n - 2 * n + faces == 2 * count_pieces(d);
}

void validate(const PlanarDiagram& d) {
  if (d.crossings.empty() && d.free_loops <= 0) throw InputError("empty diagram");
  if (d.free_loops < 0) throw InputError("negative free loop count");
  partner_table(d);  // throws on bad multiplicities
  if (d.basepoint == -1) {
    if (d.free_loops == 0) throw InputError("basepoint must lie on an edge");
  } else {
    auto labels = d.edge_labels();
    if (!std::binary_search(labels.begin(), labels.end(), d.basepoint))
      throw InputError("basepoint " + std::to_string(d.basepoint) + " is not an edge");
  }
  if (!is_planar(d)) throw InputError("diagram is not planar");
}

int count_components(const PlanarDiagram& d) {
  const int n = d.size();
  auto partner = partner_table(d);
  std::vector<char> seen(4 * n, 0);
  int comps = d.free_loops;
  for (int h0 = 0; h0 < 4 * n; ++h0) {
    if (seen[h0]) continue;
    ++comps;
    for (int h = h0; !seen[h];) {
      seen[h] = 1;
      int p = partner[h];
      seen[p] = 1;
      h = half_edge(p / 4, (p % 4 + 2) % 4);
    }
  }
  return comps;
}

PlanarDiagram braid_closure(const BraidWord& w) {
  if (w.strands < 1) throw InputError("braid needs at least one strand");
  PlanarDiagram d;
  const int s = w.strands;
  std::vector<int> cur(s);
  std::iota(cur.begin(), cur.end(), 0);
  int next = s;
  for (int k : w.letters) {
    if (k == 0 || std::abs(k) >= s)
      throw InputError("braid letter " + std::to_string(k) + " out of range for " +
                       std::to_string(s) + " strands");
    const int i = std::abs(k) - 1;
    const int bl = cur[i], br = cur[i + 1], tl = next++, tr = next++;
    Crossing x;
    // Strands run upwards; sigma_i carries the left strand over the right one.
    if (k > 0)
      x.e = {br, tr, tl, bl};
    else
      x.e = {bl, br, tr, tl};
    d.crossings.push_back(x);
    cur[i] = tl;
    cur[i + 1] = tr;
  }
  for (int i = 0; i < s; ++i) {
    if (cur[i] == i)
      ++d.free_loops;
    else
      relabel(d, cur[i], i);
  }
  d.basepoint = cur[0] == 0 ? -1 : 0;
  d.label = to_string(w);
  return d;
}

OrientedDiagram orient(const PlanarDiagram& d) { return orient(d, {}); }

OrientedDiagram orient(const PlanarDiagram& d, const std::vector<bool>& reverse) {
  const int n = d.size();
  auto partner = partner_table(d);
  OrientedDiagram od;
  od.diagram = d;
  od.incoming.assign(n, {false, false, false, false});
  od.component.assign(4 * n, -1);
  int comp = 0;
  for (int h0 = 0; h0 < 4 * n; ++h0) {
    if (od.component[h0] >= 0) continue;
    const bool flip = comp < static_cast<int>(reverse.size()) && reverse[comp];
    for (int h = h0; od.component[h] < 0;) {
      int p = partner[h];
      od.component[h] = od.component[p] = comp;
      // h leaves its crossing, p enters the next one.
      od.incoming[h / 4][h % 4] = flip;
      od.incoming[p / 4][p % 4] = !flip;
      h = half_edge(p / 4, (p % 4 + 2) % 4);
    }
    ++comp;
  }
  od.sign.resize(n);
  for (int c = 0; c < n; ++c) {
    const int u = d.crossings[c].under_slot();
    const int u_in = od.incoming[c][u] ? u : (u + 2) % 4;
    const int o_in = od.incoming[c][(u + 1) % 4] ? (u + 1) % 4 : (u + 3) % 4;
    od.sign[c] = o_in == (u_in + 3) % 4 ? 1 : -1;
    (od.sign[c] > 0 ? od.n_plus : od.n_minus)++;
  }
  return od;
}

PlanarDiagram resolve(const PlanarDiagram& d, int c, int r) {
  if (c < 0 || c >= d.size())
    throw InputError("crossing " + std::to_string(c) + " does not exist");
  if (r != 0 && r != 1) throw InputError("resolution must be 0 or 1");
  PlanarDiagram out = d;
  const Crossing x = d.crossings[c];
  out.crossings.erase(out.crossings.begin() + c);
  const int u = x.under_slot();
  const int a = r == 0 ? u : (u + 1) % 4;
  std::array<int, 4> e = x.e;
  auto join = [&](int s, int t) {
    const int es = e[s], et = e[t];
    if (es == et) {
      ++out.free_loops;
      if (out.basepoint == es) out.basepoint = -1;
      return;
    }
    relabel(out, et, es);
    for (auto& l : e)
      if (l == et) l = es;
  };
  join(a, (a + 1) % 4);
  join((a + 2) % 4, (a + 3) % 4);
  return out;
}

PlanarDiagram mirror(const PlanarDiagram& d) {
  PlanarDiagram out = d;
  for (auto& x : out.crossings) x.odd_over = !x.odd_over;
  return out;
}

PlanarDiagram reduce_r1(const PlanarDiagram& d) {
  PlanarDiagram out = d;
  for (bool changed = true; changed;) {
    changed = false;
    for (int c = 0; c < out.size() && !changed; ++c) {
      const auto e = out.crossings[c].e;
      for (int k = 0; k < 4; ++k) {
        if (e[k] != e[(k + 1) % 4]) continue;
        const int loop = e[k], a = e[(k + 2) % 4], b = e[(k + 3) % 4];
        out.crossings.erase(out.crossings.begin() + c);
        if (a == b) {
          ++out.free_loops;
          if (out.basepoint == loop || out.basepoint == a) out.basepoint = -1;
        } else {
          if (out.basepoint == loop) out.basepoint = a;
          relabel(out, b, a);
        }
        changed = true;
        break;
      }
    }
  }
  return out;
}

PlanarDiagram canonical_labels(const PlanarDiagram& d) {
  std::map<int, int> m;
  PlanarDiagram out = d;
  for (auto& x : out.crossings)
    for (auto& e : x.e) {
      auto [it, fresh] = m.emplace(e, static_cast<int>(m.size()));
      e = it->second;
    }
  if (d.basepoint >= 0) out.basepoint = m.at(d.basepoint);
  return out;
}

std::string to_string(const BraidWord& w) {
  std::ostringstream os;
  os << "braid " << w.strands << ":";
  for (int k : w.letters) os << ' ' << k;
  return os.str();
}

BraidWord parse_braid(std::string_view line) {
  auto body = detail::trim(line);
  if (!detail::starts_with_word(body, "braid")) throw ParseError("expected 'braid s: ...'");
  body = detail::trim(body.substr(5));
  auto colon = body.find(':');
  if (colon == std::string_view::npos) throw ParseError("braid line lacks ':'");
  BraidWord w;
  w.strands = detail::parse_int(detail::trim(body.substr(0, colon)), "strand count");
  if (w.strands < 1) throw ParseError("strand count must be positive");
  // Letters are k or k^m; a group ( ... )^m repeats its contents m times.
  std::string spaced;
  for (char ch : body.substr(colon + 1)) {
    if (ch == '(' || ch == ')') spaced += ' ';
    spaced += ch;
    if (ch == '(') spaced += ' ';
  }
  auto exponent = [](std::string_view tok, size_t caret) {
    if (caret == std::string_view::npos) return 1;
    int reps = detail::parse_int(tok.substr(caret + 1), "exponent");
    if (reps < 0) throw ParseError("negative exponent in braid word");
    return reps;
  };
  std::vector<std::vector<int>> groups(1);
  for (auto tok : detail::split_ws(spaced)) {
    if (tok == "(") {
      groups.emplace_back();
      continue;
    }
    const auto caret = tok.find('^');
    const int reps = exponent(tok, caret);
    if (tok.front() == ')') {
      if (groups.size() < 2) throw ParseError("unbalanced ')' in braid word");
      if (caret != std::string_view::npos ? caret != 1 : tok.size() != 1)
        throw ParseError("malformed group exponent '" + std::string(tok) + "'");
      auto inner = std::move(groups.back());
      groups.pop_back();
      for (int r = 0; r < reps; ++r) groups.back().insert(groups.back().end(), inner.begin(), inner.end());
      continue;
    }
    int k = detail::parse_int(tok.substr(0, caret), "braid letter");
    if (k == 0 || std::abs(k) >= w.strands)
      throw ParseError("braid letter " + std::to_string(k) + " out of range");
    groups.back().insert(groups.back().end(), reps, k);
  }
  if (groups.size() != 1) throw ParseError("unbalanced '(' in braid word");
  w.letters = std::move(groups.front());
  return w;
}

PlanarDiagram parse_diagram(std::string_view text) {
  auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError("empty input");
  std::string name;
  const auto& head = lines.front().text;
  if (detail::starts_with_word(head, "braid")) {
    PlanarDiagram d;
    try {
      d = braid_closure(parse_braid(head));
    } catch (const InputError& e) {
      throw ParseError(e.what());
    }
    for (size_t i = 1; i < lines.size(); ++i) {
      auto [key, val] = detail::key_value(lines[i]);
      if (key == "name")
        name = val;
      else
        throw ParseError("line " + std::to_string(lines[i].number) + ": unexpected '" + key + "'");
    }
    if (!name.empty()) d.label = name;
    return d;
  }
  if (!detail::starts_with_word(head, "pd"))
    throw ParseError("line " + std::to_string(lines.front().number) +
                     ": expected 'pd' or 'braid' header");
  PlanarDiagram d;
  bool first_over = false, have_base = false;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    const std::string where = "line " + std::to_string(ln.number) + ": ";
    if (ln.text.find(':') != std::string::npos) {
      auto [key, val] = detail::key_value(ln);
      if (key == "name") {
        name = val;
      } else if (key == "first") {
        if (val == "under")
          first_over = false;
        else if (val == "over")
          first_over = true;
        else
          throw ParseError(where + "first must be 'under' or 'over'");
      } else if (key == "basepoint") {
        d.basepoint = detail::parse_int(val, "basepoint");
        have_base = true;
      } else if (key == "free_loops") {
        d.free_loops = detail::parse_int(val, "free_loops");
      } else {
        throw ParseError(where + "unknown key '" + key + "'");
      }
      continue;
    }
    auto nums = detail::crossing_labels(ln.text);
    if (nums.size() != 4) throw ParseError(where + "a crossing needs four edge labels");
    Crossing x;
    std::copy(nums.begin(), nums.end(), x.e.begin());
    x.odd_over = !first_over;
    d.crossings.push_back(x);
  }
  if (!have_base) {
    auto labels = d.edge_labels();
    d.basepoint = labels.empty() ? -1 : labels.front();
  }
  d.label = name;
  try {
    validate(d);
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
  return d;
}

std::string write_pd(const PlanarDiagram& d) {
  std::ostringstream os;
  os << "pd\n";
  if (!d.label.empty()) os << "name: " << d.label << "\n";
  auto od = orient(d);
  for (int c = 0; c < d.size(); ++c) {
    const auto& x = d.crossings[c];
    int s = x.under_slot();
    if (!od.incoming[c][s]) s = (s + 2) % 4;
    os << "X[" << x.e[s] << "," << x.e[(s + 1) % 4] << "," << x.e[(s + 2) % 4] << ","
       << x.e[(s + 3) % 4] << "]\n";
  }
  if (d.free_loops > 0) os << "free_loops: " << d.free_loops << "\n";
  if (d.basepoint >= 0) os << "basepoint: " << d.basepoint << "\n";
  return os.str();
}

}  // namespace khw
