#pragma once

#include <cstdint>
#include <vector>

#include "khw/diagram.hpp"

namespace khw {

enum class Color : uint8_t { black, white };

// Checkerboard colouring of the faces of a diagram. Faces are traced per
// connected piece, so a region touching two split pieces appears once in
// each piece.
struct Coloring {
  // Face id of corner (c, k), the corner between slots k and k+1.
  std::vector<int> corner_face;
  std::vector<Color> face_color;
  std::vector<int> face_piece;
  // White faces per piece; the first one of each piece is the discarded R_0.
  std::vector<std::vector<int>> white;
  bool dual = false;

  int face_count() const { return static_cast<int>(face_color.size()); }
};

enum class CrossingType : uint8_t { I, II, nugatory };

struct GoeritzCrossing {
  int incidence = 0;  // mu(c) in {+1, -1}; 0 for nugatory crossings
  CrossingType type = CrossingType::nugatory;
  int region_a = -1, region_b = -1;  // white faces at the two white corners
};

// Goeritz matrix of one connected piece together with the
// Gordon-Litherland correction term.
struct GoeritzBlock {
  std::vector<std::vector<long>> G;  // rows/cols are white regions R_1..R_n
  int mu = 0;
  int sigma_G = 0;
  long det_G = 1;
};

struct GoeritzData {
  std::vector<GoeritzBlock> blocks;  // one per connected piece
  std::vector<GoeritzCrossing> crossings;
  int mu_L = 0;
  int sigma_G = 0;
  long det_G = 1;
  // Diagrams with free loops next to anything else are split links.
  bool split_unlink_factor = false;
};

// The returned colouring paints the face at corner (c, 0) of the first
// crossing of every piece black; dual = true swaps the colours.
Coloring checkerboard(const PlanarDiagram& d, bool dual = false);

GoeritzData goeritz(const OrientedDiagram& od, const Coloring& col);

// sigma(L) = signature(G) - mu(L), summed over split pieces.
int signature(const OrientedDiagram& od, bool dual = false);
int signature(const PlanarDiagram& d);

// |det G|, multiplied over split pieces; 0 when a free loop splits off.
long determinant(const PlanarDiagram& d, bool dual = false);

// Exact symmetric-matrix helpers over the rationals.
int matrix_signature(const std::vector<std::vector<long>>& m);
long matrix_determinant(const std::vector<std::vector<long>>& m);

}  // namespace khw
