#include "khw/khovanov.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

#include "kh_detail.hpp"
#include "khw/error.hpp"
#include "khw/goeritz.hpp"

namespace khw {

long BigradedRanks::total() const {
  long t = 0;
  for (const auto& [k, r] : entries) t += r;
  return t;
}

std::map<std::pair<int, int>, long> kh_ij(const OrientedDiagram& od, const KhOptions& opt) {
  const PlanarDiagram& d = od.diagram;
  validate(d);
  detail::IJRanks core;
  int loops = d.free_loops;
  if (d.size() == 0) {
    core[{0, 0}] = 1;
    --loops;
  } else {
    OrientedDiagram work = od;
    // A mark on a free loop moves onto the crossings; the loop then splits
    // off as an unreduced unknot factor like the others.
    if (work.diagram.basepoint < 0) work.diagram.basepoint = d.edge_labels().front();
    core = opt.backend == Backend::naive ? detail::naive_ij(work, opt.naive_capacity)
                                         : detail::scan_ij(work, opt.scan_capacity);
  }
  for (int k = 0; k < loops; ++k) {
    detail::IJRanks next;
    for (auto [key, r] : core) {
      next[{key.first, key.second - 1}] += r;
      next[{key.first, key.second + 1}] += r;
    }
    core = std::move(next);
  }
  return core;
}

BigradedRanks reduced_kh(const OrientedDiagram& od, const KhOptions& opt) {
  BigradedRanks out;
  for (auto [key, r] : kh_ij(od, opt)) {
    auto [i, j] = key;
    out.entries[{2 * i - j, j}] += r;
  }
  return out;
}

BigradedRanks reduced_kh(const PlanarDiagram& d, const KhOptions& opt) {
  return reduced_kh(orient(d), opt);
}

WidthProfile width(const BigradedRanks& r) {
  std::map<int, long> cols;
  for (const auto& [key, rk] : r.entries) cols[key.first] += rk;
  WidthProfile w;
  for (auto [td, rk] : cols) {
    w.two_deltas.push_back(td);
    w.column_ranks.push_back(rk);
  }
  w.width = static_cast<int>(w.two_deltas.size());
  return w;
}

long euler(const BigradedRanks& r) {
  if (r.empty()) return 0;
  const int lo = r.entries.begin()->first.first;
  long chi = 0;
  for (const auto& [key, rk] : r.entries) chi += ((key.first - lo) / 2) % 2 ? -rk : rk;
  return chi < 0 ? -chi : chi;
}

HalfLaurent jones(const BigradedRanks& r) {
  if (!r.absolute) throw InputError("the Jones polynomial needs absolute gradings");
  HalfLaurent v;
  for (const auto& [key, rk] : r.entries) {
    auto [td, tq] = key;
    const int i = (td + tq) / 2;
    // chi is V at t^(1/2) = -q, so q^j carries an extra (-1)^j.
    auto& c = v.coeff[tq];
    c += ((i + tq) % 2) ? -rk : rk;
    if (c == 0) v.coeff.erase(tq);
  }
  return v;
}

long abs_at_minus_one(const HalfLaurent& v) {
  // t^(1/2) = i, so t^(k/2) = i^k.
  long re = 0, im = 0;
  for (auto [k, c] : v.coeff) {
    switch (((k % 4) + 4) % 4) {
      case 0: re += c; break;
      case 1: im += c; break;
      case 2: re -= c; break;
      default: im -= c; break;
    }
  }
  return std::lround(std::hypot(static_cast<double>(re), static_cast<double>(im)));
}

BigradedRanks sigma_normalize(const BigradedRanks& r, int sigma) {
  BigradedRanks out;
  out.absolute = r.absolute;
  for (const auto& [key, rk] : r.entries) out.entries[{key.first - sigma, key.second}] = rk;
  return out;
}

BigradedRanks mirror_ranks(const BigradedRanks& r) {
  BigradedRanks out;
  out.absolute = r.absolute;
  for (const auto& [key, rk] : r.entries) out.entries[{-key.first, -key.second}] = rk;
  return out;
}

namespace {

std::set<int> delta_support(const BigradedRanks& r, int shift) {
  std::set<int> s;
  for (const auto& [key, rk] : r.entries) s.insert(key.first + shift);
  return s;
}

}  // namespace

SkeinReport skein_check(const OrientedDiagram& od, int crossing, const KhOptions& opt) {
  const PlanarDiagram& L = od.diagram;
  const PlanarDiagram L0 = resolve(L, crossing, 0);
  const PlanarDiagram L1 = resolve(L, crossing, 1);
  const auto o0 = orient(L0), o1 = orient(L1);
  SkeinReport rep;
  rep.det = determinant(L);
  rep.det0 = determinant(L0);
  rep.det1 = determinant(L1);
  rep.sigma = signature(od);
  rep.sigma0 = signature(o0);
  rep.sigma1 = signature(o1);
  const auto k = sigma_normalize(reduced_kh(od, opt), rep.sigma);
  const auto k0 = sigma_normalize(reduced_kh(o0, opt), rep.sigma0);
  const auto k1 = sigma_normalize(reduced_kh(o1, opt), rep.sigma1);
  rep.rank = k.total();
  rep.rank0 = k0.total();
  rep.rank1 = k1.total();
  rep.rank_defect = rep.rank0 + rep.rank1 - rep.rank;
  rep.rank_balance_ok = rep.rank_defect >= 0 && rep.rank_defect % 2 == 0;

  int shift0 = 0, shift1 = 0;
  if (rep.det0 > 0 && rep.det1 > 0 && rep.det == rep.det0 + rep.det1) {
    rep.kind = SkeinCase::MO;
  } else if (rep.det0 == 0 && rep.det1 != 0 && rep.det == rep.det1) {
    rep.kind = SkeinCase::MO_degenerate_0;
    shift0 = -1;
  } else if (rep.det1 == 0 && rep.det0 != 0 && rep.det == rep.det0) {
    rep.kind = SkeinCase::MO_degenerate_1;
    shift1 = 1;
  } else {
    rep.kind = SkeinCase::inapplicable;
    return rep;
  }
  auto cone = delta_support(k0, shift0);
  cone.merge(delta_support(k1, shift1));
  const auto s = delta_support(k, 0);
  rep.support_ok = std::includes(cone.begin(), cone.end(), s.begin(), s.end());
  return rep;
}

const char* to_string(SkeinCase k) {
  switch (k) {
    case SkeinCase::MO: return "MO";
    case SkeinCase::MO_degenerate_0: return "MO-degenerate-0";
    case SkeinCase::MO_degenerate_1: return "MO-degenerate-1";
    default: return "inapplicable";
  }
}

std::string to_json(const BigradedRanks& r) {
  nlohmann::ordered_json ranks = nlohmann::ordered_json::object();
  for (const auto& [key, rk] : r.entries)
    ranks[std::to_string(key.first)][std::to_string(key.second)] = rk;
  nlohmann::ordered_json doc;
  doc["absolute"] = r.absolute;
  doc["ranks"] = ranks;
  return doc.dump(2);
}

BigradedRanks ranks_from_json(const std::string& text) {
  BigradedRanks r;
  try {
    auto doc = nlohmann::json::parse(text);
    r.absolute = doc.at("absolute").get<bool>();
    for (const auto& [td, row] : doc.at("ranks").items())
      for (const auto& [tq, rk] : row.items()) {
        const long v = rk.get<long>();
        if (v <= 0) throw ParseError("ranks must be positive");
        r.entries[{std::stoi(td), std::stoi(tq)}] = v;
      }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad rank table: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("bad rank table: ") + e.what());
  }
  return r;
}

std::string to_grid(const BigradedRanks& r) {
  if (r.empty()) return "(empty)\n";
  int dlo = INT_MAX, dhi = INT_MIN, qlo = INT_MAX, qhi = INT_MIN;
  for (const auto& [key, rk] : r.entries) {
    dlo = std::min(dlo, key.first);
    dhi = std::max(dhi, key.first);
    qlo = std::min(qlo, key.second);
    qhi = std::max(qhi, key.second);
  }
  auto half = [](int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  };
  const int w = 6;
  std::ostringstream os;
  for (int tq = qhi; tq >= qlo; tq -= 2) {
    os << std::setw(w) << half(tq) << " |";
    for (int td = dlo; td <= dhi; td += 2) {
      auto it = r.entries.find({td, tq});
      os << std::setw(w) << (it == r.entries.end() ? std::string() : std::to_string(it->second));
    }
    os << "\n";
  }
  os << std::string(w, ' ') << " +" << std::string(w * ((dhi - dlo) / 2 + 1), '-') << "\n";
  os << std::setw(w) << "q/d" << "  ";
  for (int td = dlo; td <= dhi; td += 2) os << std::setw(w) << half(td);
  os << "\n";
  return os.str();
}

}  // namespace khw
