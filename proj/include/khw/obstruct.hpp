#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "khw/khovanov.hpp"
#include "khw/slope.hpp"
#include "khw/tangle.hpp"

namespace khw {

// One integer filling tau(n). Diagonals in `columns` are doubled and live in
// the aligned coordinate of the report: consecutive fillings are shifted so
// that their column vectors differ by one generator in one column, which is
// the shape of the mapping cone relating them.
struct FillingData {
  int n = 0;
  BigradedRanks ranks;  // absolute reduced ranks
  long det = 0;
  int sigma = 0;
  int width = 0;
  int offset = 0;               // aligned = sigma-normalised two_delta + offset
  std::vector<int> columns;     // aligned diagonals, increasing
  std::vector<long> column_ranks;
};

enum class Genericity { width_stable, expansion_generic, decay_generic, non_generic };
const char* to_string(Genericity g);

struct TailInfo {
  bool stable = false;
  int diagonal = 0;  // aligned diagonal where the tail grows
  int steps = 0;     // trailing unit steps on that diagonal
};

struct StabilityReport {
  std::string name;
  SlopeSystem system;
  int lo = 0;
  int hi = 0;
  std::vector<FillingData> fillings;  // n = lo..hi
  long infinity_rank = 0;             // reduced rank of tau(1/0)
  int w_min = 0;
  int w_max = 0;
  std::vector<int> transitions;       // n with w(n) != w(n+1)
  std::optional<int> ell;             // the transition when it is unique
  Genericity genericity = Genericity::non_generic;
  long adjacent_rank = 0;             // b_k or b_1 at the transition
  bool strong_generic = false;
  std::optional<int> strong_witness;
  TailInfo plus;                      // n -> +infinity
  TailInfo minus;                     // n -> -infinity
  bool det_ok = false;                // det(tau(n)) = c |n y - x| on the window
  bool stabilized = false;
  std::vector<std::string> notes;

  const FillingData& at(int n) const { return fillings.at(n - lo); }
  bool contains(int n) const { return n >= lo && n <= hi; }
};

struct ScanOptions {
  int lo = -6;
  int hi = 6;
  bool auto_widen = true;
  int widen_step = 4;
  int max_span = 120;
  KhOptions kh;
};

// Computes tau(n) on the window and analyses it. The tangle must already be
// in its calibrated framing. Tails that have not stabilised are widened in
// steps until they do or the span reaches max_span.
StabilityReport scan_integers(const Tangle& t, const ScanOptions& opt = {});
// The report of the mirrored tangle, rebuilt from the same fillings.
StabilityReport mirror_report(const StabilityReport& rep);

struct WidthBounds {
  int lower = 1;
  int upper = -1;  // -1 when no upper bound is known
  std::string reason;
};

// Bounds on w(tau(s)). Negative slopes go through the mirror report.
WidthBounds interval_bounds(const StabilityReport& rep, const Slope& s);

enum class Mode { lens, finite };
enum class Outcome { obstructed, inconclusive };
const char* to_string(Mode m);
const char* to_string(Outcome o);
Mode parse_mode(const std::string& text);

// The closed interval [lo, hi]; nullopt stands for -infinity or +infinity.
struct VerdictInterval {
  std::optional<long> lo;
  std::optional<long> hi;
  WidthBounds bounds;
  Outcome outcome = Outcome::inconclusive;
};

// Verdicts on slopes >= 0: unit intervals across the window, then the tail.
std::vector<VerdictInterval> obstruct(const StabilityReport& rep, Mode mode);
// Both signs, using the mirror report for slopes <= 0.
std::vector<VerdictInterval> obstruct_all(const StabilityReport& rep, Mode mode);

enum class UnknotVerdict { is_trivial_pattern, is_nontrivial, inconclusive };
const char* to_string(UnknotVerdict v);

struct UnknotCertificate {
  UnknotVerdict verdict = UnknotVerdict::inconclusive;
  std::optional<int> witness;  // a filling n != 0 of width >= 2
  std::string reason;
};

UnknotCertificate unknot_certificate(const StabilityReport& rep);

std::string to_json(const StabilityReport& rep);
std::string to_json(const std::vector<VerdictInterval>& verdicts, Mode mode);
std::string to_json(const UnknotCertificate& cert);
// sigma-normalised grids of every filling, a few per row.
std::string report_grids(const StabilityReport& rep, int per_row = 4);
std::string to_string(const VerdictInterval& v);

}  // namespace khw
