#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace khw {

// One crossing of a planar diagram. The four edge labels are listed in
// counterclockwise order around the crossing; slot k is half-edge 4*c+k.
struct Crossing {
  std::array<int, 4> e{};
  // Slots 1 and 3 carry the overstrand (slots 0 and 2 the understrand).
  // Mirroring toggles this flag.
  bool odd_over = true;

  int under_slot() const { return odd_over ? 0 : 1; }
  bool operator==(const Crossing&) const = default;
};

// A 4-valent planar link diagram stored as a combinatorial map. Every edge
// label occurs in exactly two crossing slots; unknotted components with no
// crossings are only counted.
struct PlanarDiagram {
  std::vector<Crossing> crossings;
  int free_loops = 0;
  int basepoint = -1;  // edge label, or -1 when the mark sits on a free loop
  std::string label;

  int size() const { return static_cast<int>(crossings.size()); }
  std::vector<int> edge_labels() const;  // sorted
  bool operator==(const PlanarDiagram& o) const {
    return crossings == o.crossings && free_loops == o.free_loops &&
           basepoint == o.basepoint;
  }
};

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;  // k > 0 is sigma_k, k < 0 its inverse
};

struct OrientedDiagram {
  PlanarDiagram diagram;
  std::vector<std::array<bool, 4>> incoming;  // incoming[c][slot]
  std::vector<int> sign;                      // +1 / -1 per crossing
  std::vector<int> component;                 // component index per crossing slot 4*c+k
  int n_plus = 0;
  int n_minus = 0;
};

// Half-edge helpers.
inline int half_edge(int c, int slot) { return 4 * c + slot; }

// Throws InputError unless every label occurs exactly twice, the basepoint
// is an existing edge and the map is planar.
void validate(const PlanarDiagram& d);

// Euler characteristic test V - E + F = 2 per connected piece.
bool is_planar(const PlanarDiagram& d);

// Number of connected pieces of the underlying 4-valent graph
// (free loops excluded).
int count_pieces(const PlanarDiagram& d);

int count_components(const PlanarDiagram& d);

PlanarDiagram braid_closure(const BraidWord& w);

OrientedDiagram orient(const PlanarDiagram& d);
// reverse[k] flips the direction chosen for the k-th traced component.
OrientedDiagram orient(const PlanarDiagram& d, const std::vector<bool>& reverse);

// r = 0 or 1 smoothing of crossing c (Kauffman A/B convention).
PlanarDiagram resolve(const PlanarDiagram& d, int c, int r);

PlanarDiagram mirror(const PlanarDiagram& d);

// Removes kinks (an edge joining two neighbouring slots of one crossing)
// until none remain.
PlanarDiagram reduce_r1(const PlanarDiagram& d);

// Relabels edges to 0..2n-1 in order of first appearance.
PlanarDiagram canonical_labels(const PlanarDiagram& d);

// Text formats (see docs/formats.md).
BraidWord parse_braid(std::string_view line);
PlanarDiagram parse_diagram(std::string_view text);
std::string write_pd(const PlanarDiagram& d);
std::string to_string(const BraidWord& w);

}  // namespace khw
