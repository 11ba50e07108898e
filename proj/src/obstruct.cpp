#include "khw/obstruct.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "json.hpp"

#include "khw/error.hpp"
#include "khw/goeritz.hpp"
#include "khw/slopes.hpp"

namespace khw {
namespace {

using Columns = std::map<int, long>;

struct RawFilling {
  BigradedRanks ranks;
  long det = 0;
  int sigma = 0;
};

RawFilling compute_filling(const Tangle& t, int n, const KhOptions& kh) {
  const auto d = tau(t, make_slope(n, 1));
  const auto od = orient(d);
  RawFilling f;
  f.ranks = reduced_kh(od, kh);
  f.det = determinant(d);
  f.sigma = signature(od);
  return f;
}

Columns normalized_columns(const RawFilling& f) {
  const auto w = width(sigma_normalize(f.ranks, f.sigma));
  Columns c;
  for (size_t i = 0; i < w.two_deltas.size(); ++i) c[w.two_deltas[i]] = w.column_ranks[i];
  return c;
}

Columns shifted(const Columns& c, int s) {
  Columns out;
  for (auto [d, r] : c) out[d + s] = r;
  return out;
}

// The single column where b differs from a, when the difference is exactly
// one generator there.
std::optional<std::pair<int, long>> unit_difference(const Columns& a, const Columns& b) {
  std::optional<std::pair<int, long>> found;
  std::set<int> keys;
  for (auto [d, r] : a) keys.insert(d);
  for (auto [d, r] : b) keys.insert(d);
  for (int d : keys) {
    const long ra = a.count(d) ? a.at(d) : 0;
    const long rb = b.count(d) ? b.at(d) : 0;
    if (ra == rb) continue;
    if (found || std::labs(rb - ra) != 1) return std::nullopt;
    found = std::make_pair(d, rb - ra);
  }
  return found;
}

Columns aligned(const FillingData& f) {
  Columns c;
  for (size_t i = 0; i < f.columns.size(); ++i) c[f.columns[i]] = f.column_ranks[i];
  return c;
}

long neighbour_rank(const Columns& c, int d) {
  // Smallest rank among the columns next to d; supports have no holes, so
  // there is usually exactly one.
  long best = -1;
  for (int e : {d - 2, d + 2}) {
    auto it = c.find(e);
    if (it != c.end() && (best < 0 || it->second < best)) best = it->second;
  }
  return best < 0 ? 0 : best;
}

bool strongly_generic_at(const BigradedRanks& r) {
  std::map<int, std::vector<long>> by_delta;
  for (const auto& [g, rank] : r.entries)
    if (rank > 0) by_delta[g.first].push_back(rank);
  if (by_delta.empty()) return false;
  for (const auto& [d, ranks] : by_delta) {
    long total = 0;
    for (long x : ranks) total += x;
    const bool ok = std::any_of(ranks.begin(), ranks.end(),
                                [&](long x) { return total > x && x > 1; });
    if (!ok) return false;
  }
  return true;
}

StabilityReport analyze(const std::string& name, const SlopeSystem& sys,
                        const std::map<int, RawFilling>& raw, long infinity_rank) {
  StabilityReport rep;
  rep.name = name;
  rep.system = sys;
  rep.lo = raw.begin()->first;
  rep.hi = raw.rbegin()->first;
  rep.infinity_rank = infinity_rank;

  // Step-by-step alignment.
  int offset = 0;
  Columns prev;
  for (const auto& [n, f] : raw) {
    FillingData fd;
    fd.n = n;
    fd.ranks = f.ranks;
    fd.det = f.det;
    fd.sigma = f.sigma;
    const Columns norm = normalized_columns(f);
    if (n > rep.lo) {
      const int s0 = (n == 0 || n == 1) ? 1 : 0;
      std::optional<int> chosen;
      for (int k = 0; k <= 4 && !chosen; ++k)
        for (int s : {s0 + 2 * k, s0 - 2 * k})
          if (!chosen && unit_difference(prev, shifted(norm, offset + s))) chosen = s;
      if (!chosen) {
        rep.notes.push_back("tau(" + std::to_string(n - 1) + ") and tau(" + std::to_string(n) +
                            ") do not differ by one generator under any shift");
        chosen = s0;
      } else if (*chosen != s0) {
        rep.notes.push_back("tau(" + std::to_string(n) + ") aligned with shift " +
                            std::to_string(*chosen) + " instead of " + std::to_string(s0));
      }
      offset += *chosen;
    }
    fd.offset = offset;
    prev = shifted(norm, offset);
    for (auto [d, r] : prev) {
      fd.columns.push_back(d);
      fd.column_ranks.push_back(r);
    }
    fd.width = static_cast<int>(fd.columns.size());
    rep.fillings.push_back(std::move(fd));
  }

  rep.w_min = rep.w_max = rep.fillings.front().width;
  for (const auto& f : rep.fillings) {
    rep.w_min = std::min(rep.w_min, f.width);
    rep.w_max = std::max(rep.w_max, f.width);
  }
  if (rep.w_max - rep.w_min > 1)
    rep.notes.push_back("w_max - w_min = " + std::to_string(rep.w_max - rep.w_min) +
                        " exceeds 1");

  for (int n = rep.lo; n < rep.hi; ++n)
    if (rep.at(n).width != rep.at(n + 1).width) rep.transitions.push_back(n);

  if (rep.transitions.empty()) {
    rep.genericity = Genericity::width_stable;
  } else if (rep.transitions.size() == 1 && rep.w_max - rep.w_min == 1) {
    const int l = rep.transitions.front();
    rep.ell = l;
    const Columns a = aligned(rep.at(l));
    const Columns b = aligned(rep.at(l + 1));
    if (rep.at(l).width < rep.at(l + 1).width) {
      int fresh = 0;
      for (auto [d, r] : b)
        if (!a.count(d)) fresh = d;
      rep.adjacent_rank = neighbour_rank(a, fresh);
      rep.genericity = rep.adjacent_rank > 1 ? Genericity::expansion_generic
                                             : Genericity::non_generic;
    } else {
      int gone = 0;
      for (auto [d, r] : a)
        if (!b.count(d)) gone = d;
      if (a.at(gone) != 1)
        rep.notes.push_back("vanishing column at the transition has rank " +
                            std::to_string(a.at(gone)));
      rep.adjacent_rank = neighbour_rank(a, gone);
      rep.genericity = rep.adjacent_rank > 1 ? Genericity::decay_generic
                                             : Genericity::non_generic;
    }
  } else {
    rep.genericity = Genericity::non_generic;
    if (rep.transitions.size() > 1)
      rep.notes.push_back(std::to_string(rep.transitions.size()) + " width transitions in window");
  }

  for (const auto& f : rep.fillings)
    if (strongly_generic_at(f.ranks)) {
      rep.strong_generic = true;
      rep.strong_witness = f.n;
      break;
    }

  // Tails: unit growth on one aligned diagonal, away from n = 0.
  for (int n = rep.hi; n - 1 >= 1 && n - 1 >= rep.lo; --n) {
    auto diff = unit_difference(aligned(rep.at(n - 1)), aligned(rep.at(n)));
    if (!diff || diff->second != 1) break;
    if (rep.plus.steps > 0 && diff->first != rep.plus.diagonal) break;
    rep.plus.diagonal = diff->first;
    ++rep.plus.steps;
  }
  for (int n = rep.lo; n + 1 <= -1 && n + 1 <= rep.hi; ++n) {
    auto diff = unit_difference(aligned(rep.at(n + 1)), aligned(rep.at(n)));
    if (!diff || diff->second != 1) break;
    if (rep.minus.steps > 0 && diff->first != rep.minus.diagonal) break;
    rep.minus.diagonal = diff->first;
    ++rep.minus.steps;
  }
  rep.plus.stable = rep.plus.steps >= 3;
  rep.minus.stable = rep.minus.steps >= 3;

  rep.det_ok = true;
  for (const auto& f : rep.fillings) {
    const long want = filling_order(sys, make_slope(f.n, 1));
    if (f.det != want) {
      if (rep.det_ok)
        rep.notes.push_back("det(tau(" + std::to_string(f.n) + ")) = " + std::to_string(f.det) +
                            ", expected " + std::to_string(want));
      rep.det_ok = false;
    }
  }
  rep.stabilized = rep.plus.stable && rep.minus.stable && rep.det_ok;
  return rep;
}

WidthBounds pair_bounds(const StabilityReport& rep, int n) {
  const auto& a = rep.at(n);
  const auto& b = rep.at(n + 1);
  WidthBounds wb;
  wb.upper = std::max(a.width, b.width);
  wb.lower = 1;
  wb.reason = "upper from tau(" + std::to_string(n) + "), tau(" + std::to_string(n + 1) + ")";
  std::vector<int> ca = a.columns, cb = b.columns;
  if (a.width == b.width && ca == cb) {
    wb.lower = a.width;
    wb.reason += "; endpoint supports coincide";
  }
  return wb;
}

void apply_generic(const StabilityReport& rep, WidthBounds& wb) {
  if (!rep.stabilized || rep.genericity == Genericity::non_generic) return;
  if (rep.w_min > wb.lower) {
    wb.lower = rep.w_min;
    wb.reason += std::string("; ") + to_string(rep.genericity) + " gives w_min";
  }
}

std::string interval_text(const std::optional<long>& lo, const std::optional<long>& hi) {
  return std::string(lo ? "[" + std::to_string(*lo) : "(-inf") + ", " +
         (hi ? std::to_string(*hi) + "]" : "+inf)");
}

}  // namespace

const char* to_string(Genericity g) {
  switch (g) {
    case Genericity::width_stable: return "width-stable";
    case Genericity::expansion_generic: return "expansion-generic";
    case Genericity::decay_generic: return "decay-generic";
    case Genericity::non_generic: return "non-generic";
  }
  return "?";
}

const char* to_string(Mode m) { return m == Mode::lens ? "lens" : "finite"; }
const char* to_string(Outcome o) {
  return o == Outcome::obstructed ? "Obstructed" : "Inconclusive";
}
const char* to_string(UnknotVerdict v) {
  switch (v) {
    case UnknotVerdict::is_trivial_pattern: return "is-trivial-pattern";
    case UnknotVerdict::is_nontrivial: return "is-nontrivial";
    case UnknotVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Mode parse_mode(const std::string& text) {
  if (text == "lens") return Mode::lens;
  if (text == "finite") return Mode::finite;
  throw InputError("unknown mode '" + text + "' (expected lens or finite)");
}

StabilityReport scan_integers(const Tangle& t, const ScanOptions& opt) {
  if (opt.lo > 0 || opt.hi < 0 || opt.hi - opt.lo < 1)
    throw InputError("scan window must contain 0 and at least two integers");
  const SlopeSystem sys = t.system.value_or(knot_system());
  std::map<int, RawFilling> raw;
  auto fill = [&](int a, int b) {
    for (int n = a; n <= b; ++n)
      if (!raw.count(n)) raw[n] = compute_filling(t, n, opt.kh);
  };
  const long inf_rank = reduced_kh(orient(tau(t, Slope{1, 0})), opt.kh).total();
  int lo = opt.lo, hi = opt.hi;
  fill(lo, hi);
  StabilityReport rep = analyze(t.name, sys, raw, inf_rank);
  while (opt.auto_widen && !(rep.plus.stable && rep.minus.stable) &&
         hi - lo + opt.widen_step <= opt.max_span) {
    if (!rep.plus.stable) hi += opt.widen_step;
    if (!rep.minus.stable) lo -= opt.widen_step;
    fill(lo, hi);
    rep = analyze(t.name, sys, raw, inf_rank);
  }
  if (!(rep.plus.stable && rep.minus.stable))
    rep.notes.push_back("tails not stabilised within span " + std::to_string(hi - lo));
  return rep;
}

StabilityReport mirror_report(const StabilityReport& rep) {
  std::map<int, RawFilling> raw;
  for (const auto& f : rep.fillings) raw[-f.n] = {mirror_ranks(f.ranks), f.det, -f.sigma};
  SlopeSystem sys = rep.system;
  sys.lambda_x = -sys.lambda_x;
  return analyze(rep.name.empty() ? "" : "mirror of " + rep.name, sys, raw, rep.infinity_rank);
}

WidthBounds interval_bounds(const StabilityReport& rep, const Slope& s) {
  if (s.is_infinite()) {
    if (rep.infinity_rank == 1) return {1, 1, "tau(1/0) has rank 1"};
    return {1, -1, "tau(1/0) is not the unknot"};
  }
  if (s.negative()) return interval_bounds(mirror_report(rep), -s);
  const long p = s.p, q = s.q;
  const long n = p / q;  // floor, as p >= 0
  if (s.is_integer() && rep.contains(static_cast<int>(n))) {
    const int w = rep.at(static_cast<int>(n)).width;
    return {w, w, "computed"};
  }
  WidthBounds wb;
  if (n + 1 <= rep.hi) {
    wb = pair_bounds(rep, static_cast<int>(n));
  } else if (rep.plus.stable && rep.det_ok) {
    const int w = rep.at(rep.hi).width;
    wb = {w, w, "stabilised tail beyond n = " + std::to_string(rep.hi)};
  } else {
    return {1, -1, "tail not stabilised"};
  }
  apply_generic(rep, wb);
  return wb;
}

std::vector<VerdictInterval> obstruct(const StabilityReport& rep, Mode mode) {
  if (rep.lo > 0 || rep.hi < 1) throw InputError("report window must contain 0 and 1");
  const int threshold = mode == Mode::lens ? 1 : 2;
  std::vector<VerdictInterval> out;
  auto push = [&](std::optional<long> lo, std::optional<long> hi, long mid2) {
    VerdictInterval v;
    v.lo = lo;
    v.hi = hi;
    v.bounds = interval_bounds(rep, make_slope(mid2, 2));
    v.outcome = v.bounds.lower > threshold ? Outcome::obstructed : Outcome::inconclusive;
    out.push_back(v);
  };
  for (int n = 0; n < rep.hi; ++n) push(n, n + 1, 2L * n + 1);
  push(rep.hi, std::nullopt, 2L * rep.hi + 1);
  return out;
}

std::vector<VerdictInterval> obstruct_all(const StabilityReport& rep, Mode mode) {
  auto neg = obstruct(mirror_report(rep), mode);
  std::vector<VerdictInterval> out;
  for (auto it = neg.rbegin(); it != neg.rend(); ++it) {
    VerdictInterval v = *it;
    v.lo = it->hi ? std::optional<long>(-*it->hi) : std::nullopt;
    v.hi = -*it->lo;
    v.bounds.reason = "mirror: " + v.bounds.reason;
    out.push_back(v);
  }
  for (auto& v : obstruct(rep, mode)) out.push_back(v);
  return out;
}

UnknotCertificate unknot_certificate(const StabilityReport& rep) {
  UnknotCertificate c;
  for (const auto& f : rep.fillings)
    if (f.n != 0 && f.width >= 2) {
      c.verdict = UnknotVerdict::is_nontrivial;
      c.witness = f.n;
      c.reason = "tau(" + std::to_string(f.n) + ") has width " + std::to_string(f.width) +
                 "; every nonzero integer filling of the trivial tangle is thin";
      return c;
    }
  bool ranks_ok = true;
  for (const auto& f : rep.fillings)
    if (f.n != 0 && f.ranks.total() != std::labs(f.n)) ranks_ok = false;
  if (rep.stabilized && ranks_ok && rep.infinity_rank == 1) {
    c.verdict = UnknotVerdict::is_trivial_pattern;
    c.reason = "thin fillings of rank |n| on [" + std::to_string(rep.lo) + ", " +
               std::to_string(rep.hi) + "] with stabilised tails";
  } else {
    c.reason = "thin on the window but the pattern is not that of the trivial tangle";
  }
  return c;
}

std::string to_string(const VerdictInterval& v) {
  std::ostringstream os;
  os << interval_text(v.lo, v.hi) << "  width in [" << v.bounds.lower << ", "
     << (v.bounds.upper < 0 ? std::string("?") : std::to_string(v.bounds.upper)) << "]  "
     << to_string(v.outcome) << "  (" << v.bounds.reason << ")";
  return os.str();
}

std::string to_json(const StabilityReport& rep) {
  using J = nlohmann::ordered_json;
  J doc;
  doc["name"] = rep.name;
  doc["c_M"] = rep.system.c;
  doc["lambda"] = {rep.system.lambda_x, rep.system.lambda_y};
  doc["window"] = {rep.lo, rep.hi};
  doc["infinity_rank"] = rep.infinity_rank;
  J fills = J::array();
  for (const auto& f : rep.fillings) {
    J j;
    j["n"] = f.n;
    j["det"] = f.det;
    j["sigma"] = f.sigma;
    j["rank"] = f.ranks.total();
    j["width"] = f.width;
    j["offset"] = f.offset;
    J cols = J::array();
    for (size_t i = 0; i < f.columns.size(); ++i)
      cols.push_back({{"two_delta", f.columns[i]}, {"rank", f.column_ranks[i]}});
    j["columns"] = cols;
    j["kh"] = J::parse(to_json(f.ranks));
    fills.push_back(j);
  }
  doc["fillings"] = fills;
  doc["w_min"] = rep.w_min;
  doc["w_max"] = rep.w_max;
  doc["transitions"] = rep.transitions;
  doc["ell"] = rep.ell ? J(*rep.ell) : J(nullptr);
  doc["genericity"] = to_string(rep.genericity);
  doc["adjacent_rank"] = rep.adjacent_rank;
  doc["strong_generic"] = rep.strong_generic;
  doc["strong_witness"] = rep.strong_witness ? J(*rep.strong_witness) : J(nullptr);
  auto tail = [](const TailInfo& t) {
    return J{{"stable", t.stable}, {"two_delta", t.diagonal}, {"steps", t.steps}};
  };
  doc["delta_plus"] = rep.plus.stable ? J(rep.plus.diagonal) : J(nullptr);
  doc["tail_plus"] = tail(rep.plus);
  doc["tail_minus"] = tail(rep.minus);
  doc["det_ok"] = rep.det_ok;
  doc["stabilized"] = rep.stabilized;
  doc["notes"] = rep.notes;
  return doc.dump(2);
}

std::string to_json(const std::vector<VerdictInterval>& verdicts, Mode mode) {
  using J = nlohmann::ordered_json;
  J doc;
  doc["mode"] = to_string(mode);
  J arr = J::array();
  for (const auto& v : verdicts) {
    J j;
    j["lo"] = v.lo ? J(*v.lo) : J(nullptr);
    j["hi"] = v.hi ? J(*v.hi) : J(nullptr);
    j["lower"] = v.bounds.lower;
    j["upper"] = v.bounds.upper < 0 ? J(nullptr) : J(v.bounds.upper);
    j["verdict"] = to_string(v.outcome);
    j["reason"] = v.bounds.reason;
    arr.push_back(j);
  }
  doc["intervals"] = arr;
  return doc.dump(2);
}

std::string to_json(const UnknotCertificate& cert) {
  nlohmann::ordered_json doc;
  doc["verdict"] = to_string(cert.verdict);
  doc["witness"] = cert.witness ? nlohmann::ordered_json(*cert.witness) : nullptr;
  doc["reason"] = cert.reason;
  return doc.dump(2);
}

std::string report_grids(const StabilityReport& rep, int per_row) {
  std::ostringstream out;
  const int count = static_cast<int>(rep.fillings.size());
  for (int start = 0; start < count; start += per_row) {
    std::vector<std::vector<std::string>> blocks;
    size_t height = 0;
    std::vector<size_t> widths;
    for (int i = start; i < std::min(count, start + per_row); ++i) {
      const auto& f = rep.fillings[i];
      std::vector<std::string> lines = {"tau(" + std::to_string(f.n) + ") w=" +
                                        std::to_string(f.width) + " rk=" +
                                        std::to_string(f.ranks.total())};
      std::istringstream is(to_grid(sigma_normalize(f.ranks, f.sigma)));
      for (std::string line; std::getline(is, line);) lines.push_back(line);
      size_t w = 0;
      for (const auto& l : lines) w = std::max(w, l.size());
      widths.push_back(w);
      height = std::max(height, lines.size());
      blocks.push_back(std::move(lines));
    }
    for (size_t r = 0; r < height; ++r) {
      std::string row;
      for (size_t b = 0; b < blocks.size(); ++b) {
        std::string cell = r < blocks[b].size() ? blocks[b][r] : "";
        cell.resize(widths[b], ' ');
        row += cell + (b + 1 < blocks.size() ? "   " : "");
      }
      while (!row.empty() && row.back() == ' ') row.pop_back();
      out << row << '\n';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace khw
