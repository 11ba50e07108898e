#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "khw/diagram.hpp"
#include "khw/khovanov.hpp"
#include "khw/tangle.hpp"

namespace khw::test {

std::filesystem::path corpus_dir();
std::string read_text(const std::filesystem::path& p);

struct NamedDiagram {
  std::string name;
  PlanarDiagram diagram;
};
struct NamedTangle {
  std::string name;
  Tangle tangle;  // in its calibrated framing
  int offset = 0;
};

// Every .pd file in the corpus.
const std::vector<NamedDiagram>& corpus_diagrams();
// Every .tangle file in the corpus, calibrated.
const std::vector<NamedTangle>& corpus_tangles();
const Tangle& corpus_tangle(const std::string& name);
PlanarDiagram corpus_diagram(const std::string& name);

// Column totals of the reduced ranks, diagonals increasing.
std::vector<long> column_totals(const BigradedRanks& r);

// Kauffman bracket state sum, keyed by the exponent of A. The A-smoothing of
// X[i,j,k,l] (i the incoming under-strand) joins i-j and k-l.
std::map<int, long> kauffman_bracket(const PlanarDiagram& d);
// V(t) from the bracket with A = t^(-1/4), keyed by the exponent of t^(1/2).
std::map<int, long> jones_from_bracket(const PlanarDiagram& d);

// A random knot as a braid closure and a diagram of it after three braid
// moves (R2, R3, conjugation, stabilisation, far commutation), with an R1
// kink spliced into every second one.
struct ReidemeisterPair {
  BraidWord word;
  BraidWord moved;
  PlanarDiagram before;
  PlanarDiagram after;
};
std::vector<ReidemeisterPair> reidemeister_pairs(int count, unsigned seed);

}  // namespace khw::test
