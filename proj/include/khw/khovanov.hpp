#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "khw/diagram.hpp"

namespace khw {

enum class Backend { naive, scan };

struct KhOptions {
  Backend backend = Backend::scan;
  int naive_capacity = 16;           // crossings
  long scan_capacity = 4'000'000;    // live objects in the scanned complex
};

// Reduced Khovanov ranks over F2, keyed by doubled gradings
// (two_delta, two_q) = (2i - j, j).
struct BigradedRanks {
  std::map<std::pair<int, int>, long> entries;
  bool absolute = true;

  long total() const;
  bool empty() const { return entries.empty(); }
  bool operator==(const BigradedRanks&) const = default;
};

struct WidthProfile {
  int width = 0;
  std::vector<int> two_deltas;      // supported diagonals, increasing
  std::vector<long> column_ranks;   // total rank per supported diagonal
};

// Laurent polynomial in t^(1/2): exponent of t^(1/2) -> coefficient.
struct HalfLaurent {
  std::map<int, long> coeff;
  bool operator==(const HalfLaurent&) const = default;
};

enum class SkeinCase { MO, MO_degenerate_0, MO_degenerate_1, inapplicable };

struct SkeinReport {
  SkeinCase kind = SkeinCase::inapplicable;
  long det = 0, det0 = 0, det1 = 0;
  int sigma = 0, sigma0 = 0, sigma1 = 0;
  long rank = 0, rank0 = 0, rank1 = 0;
  long rank_defect = 0;  // rank0 + rank1 - rank
  bool rank_balance_ok = false;
  bool support_ok = false;
};

BigradedRanks reduced_kh(const PlanarDiagram& d, const KhOptions& opt = {});
BigradedRanks reduced_kh(const OrientedDiagram& od, const KhOptions& opt = {});

// (i, j) ranks straight from a backend, before the diagonal conversion.
std::map<std::pair<int, int>, long> kh_ij(const OrientedDiagram& od, const KhOptions& opt);

WidthProfile width(const BigradedRanks& r);
long euler(const BigradedRanks& r);
HalfLaurent jones(const BigradedRanks& r);
// |V(-1)|, evaluated with t^(1/2) = i.
long abs_at_minus_one(const HalfLaurent& v);
BigradedRanks sigma_normalize(const BigradedRanks& r, int sigma);
BigradedRanks mirror_ranks(const BigradedRanks& r);

SkeinReport skein_check(const OrientedDiagram& od, int crossing, const KhOptions& opt = {});
const char* to_string(SkeinCase k);

// {"absolute": bool, "ranks": {two_delta: {two_q: rank}}}
std::string to_json(const BigradedRanks& r);
BigradedRanks ranks_from_json(const std::string& text);
// Delta runs left to right and q bottom to top; zero ranks are blank.
std::string to_grid(const BigradedRanks& r);

}  // namespace khw
