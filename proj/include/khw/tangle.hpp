#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "khw/diagram.hpp"
#include "khw/slope.hpp"

namespace khw {

// Boundary points of a tangle, in counterclockwise order.
enum End { NE = 0, NW = 1, SW = 2, SE = 3 };

// A two-strand tangle in a ball. The body is a planar diagram in which each
// end label occurs in exactly one crossing slot; an arc without crossings is
// written by giving both of its ends the same label.
struct Tangle {
  PlanarDiagram body;
  std::array<int, 4> ends{};  // indexed by End
  std::string name;
  std::string provenance;
  std::optional<SlopeSystem> system;
};

// [a1, ..., ar] = a1 + 1/(a2 + 1/(... + 1/ar)); the empty list is 1/0.
struct ContinuedFraction {
  std::vector<int> terms;
  Slope value;
  bool mirrored = false;  // the expansion is of -value
};

enum class Closure { odd, even };

// The 3-strand braid attached to a continued fraction. Letters use the
// strand positions 1, 2, 3 on the east side of the tangle: letter 2 twists
// positions 2 and 3, letter 1 twists positions 1 and 2.
struct RationalBraid {
  BraidWord word;
  Closure closure = Closure::even;
};

struct CfResolution {
  ContinuedFraction zero;
  ContinuedFraction one;
  bool r_odd = false;
};

Slope cf_evaluate(const std::vector<int>& terms);
// Normal form: a1 = floor(p/q) >= 0, later terms positive, last term > 1
// when r > 1. Negative slopes expand |s| and set the mirror flag.
ContinuedFraction cf_expand(const Slope& s);
// Resolutions of the terminal crossing. Throws InputError when r = 0.
CfResolution cf_resolve(const ContinuedFraction& cf);
RationalBraid braid_of_cf(const ContinuedFraction& cf);

// Two arcs NW-NE and SW-SE; its closures are the (2, n) torus links.
Tangle trivial_tangle();
// The closure of a braid with strands k and k+1 left open above the last
// letter. Appending sigma_k^n to the word gives the closure tau(n).
Tangle braid_gap_tangle(const BraidWord& w, int gap);
Tangle mirror(const Tangle& t);
// Adds f half-twists of the SE and NE ends, so tau(twist(t, f), n) is
// tau(t, n + f) for integers n.
Tangle twist(const Tangle& t, int f);

// Throws InputError unless the ends are consistent, the strands pair the
// four ends and the closures are planar.
void validate(const Tangle& t);
// End matched to each end through the tangle.
std::array<int, 4> end_pairing(const Tangle& t);

// The branch-set link tau(p/q). The crossings of the body come first in the
// result and the terminal crossing of the rational braid is last; the
// basepoint sits on the closure arc through NW. Negative slopes use
// tau(t, -s) = mirror(tau(mirror(t), s)).
PlanarDiagram tau(const Tangle& t, const Slope& s);
// The closure of t by an explicit rational braid and closure pattern.
PlanarDiagram close_with(const Tangle& t, const RationalBraid& rb);
// Index of the terminal crossing in tau(t, s), or -1 when s has none.
int terminal_crossing(const Tangle& t, const Slope& s);

struct Calibration {
  bool ok = false;
  int offset = 0;                 // tau(t, n + offset) fills slope n
  std::vector<long> determinants; // det(tau(t, n)) over the window, on failure
  std::string reason;
};

// Finds the offset f in [lo, hi] with det(tau(t, n + f)) = |n| for
// n in [-2, 2] and tau(t, 1/0) of reduced rank 1.
Calibration calibrate(const Tangle& t, int lo = -20, int hi = 20);

// Text format (docs/formats.md).
Tangle parse_tangle(std::string_view text);
std::string write_tangle(const Tangle& t);

}  // namespace khw
