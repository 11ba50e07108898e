#include "khw/goeritz.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>

#include "diagram_detail.hpp"
#include "khw/error.hpp"

namespace khw {

namespace {

using Rational = boost::multiprecision::cpp_rational;

int find(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

// Piece id per crossing, numbered by first crossing.
std::vector<int> crossing_pieces(const PlanarDiagram& d, const std::vector<int>& partner) {
  const int n = d.size();
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  for (int h = 0; h < 4 * n; ++h) uf[find(uf, h / 4)] = find(uf, partner[h] / 4);
  std::vector<int> id(n, -1), piece(n);
  int next = 0;
  for (int c = 0; c < n; ++c) {
    int r = find(uf, c);
    if (id[r] < 0) id[r] = next++;
    piece[c] = id[r];
  }
  return piece;
}

// Congruence diagonalisation over Q. Returns the pivots; a zero pivot marks
// a null direction.
std::vector<Rational> diagonalise(const std::vector<std::vector<long>>& m) {
  const size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw InputError("matrix is not square");
    for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  }
  std::vector<Rational> pivots;
  for (size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      size_t j = k + 1;
      while (j < n && a[j][j] == 0) ++j;
      if (j < n) {
        std::swap(a[k], a[j]);
        for (auto& row : a) std::swap(row[k], row[j]);
      } else {
        j = k + 1;
        while (j < n && a[k][j] == 0) ++j;
        if (j == n) {
          pivots.push_back(0);
          continue;
        }
        // Row and column j added to k make a[k][k] = 2 a[k][j] != 0.
        for (size_t t = 0; t < n; ++t) a[k][t] += a[j][t];
        for (size_t t = 0; t < n; ++t) a[t][k] += a[t][j];
      }
    }
    const Rational p = a[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const Rational f = a[i][k] / p;
      for (size_t t = k; t < n; ++t) a[i][t] -= f * a[k][t];
      for (size_t t = k; t < n; ++t) a[t][i] = a[i][t];
    }
    pivots.push_back(p);
  }
  return pivots;
}

}  // namespace

int matrix_signature(const std::vector<std::vector<long>>& m) {
  int s = 0;
  for (const auto& p : diagonalise(m)) s += p > 0 ? 1 : p < 0 ? -1 : 0;
  return s;
}

long matrix_determinant(const std::vector<std::vector<long>>& m) {
  Rational det = 1;
  for (const auto& p : diagonalise(m)) det *= p;
  if (boost::multiprecision::denominator(det) != 1)
    throw InputError("non-integral determinant of an integer matrix");
  return boost::multiprecision::numerator(det).convert_to<long>();
}

Coloring checkerboard(const PlanarDiagram& d, bool dual) {
  const int n = d.size();
  Coloring col;
  col.dual = dual;
  int faces = 0;
  col.corner_face = detail::trace_faces(d, faces);
  const auto partner = detail::partner_table(d);
  const auto piece = crossing_pieces(d, partner);
  const int pieces = n == 0 ? 0 : *std::max_element(piece.begin(), piece.end()) + 1;

  std::vector<int> color(faces, -1);
  col.face_piece.assign(faces, -1);
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < 4; ++k) col.face_piece[col.corner_face[4 * c + k]] = piece[c];

  // Corners alternate around a crossing; propagate through shared faces.
  std::vector<int> stack;
  std::vector<char> done(n, 0);
  auto paint = [&](int c, int k, int value) {
    for (int t = 0; t < 4; ++t) {
      const int f = col.corner_face[4 * c + (k + t) % 4];
      const int want = value ^ (t & 1);
      if (color[f] < 0) {
        color[f] = want;
      } else if (color[f] != want) {
        throw InputError("diagram faces are not two-colourable");
      }
    }
  };
  std::vector<std::vector<int>> face_crossings(faces);
  for (int h = 0; h < 4 * n; ++h) face_crossings[col.corner_face[h]].push_back(h);
  for (int c0 = 0; c0 < n; ++c0) {
    if (done[c0]) continue;
    paint(c0, 0, dual ? 1 : 0);
    done[c0] = 1;
    stack.push_back(c0);
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      for (int k = 0; k < 4; ++k) {
        const int f = col.corner_face[4 * c + k];
        for (int h : face_crossings[f]) {
          const int c2 = h / 4;
          if (done[c2]) continue;
          done[c2] = 1;
          paint(c2, h % 4, color[f]);
          stack.push_back(c2);
        }
      }
    }
  }
  col.face_color.resize(faces);
  col.white.assign(pieces, {});
  for (int f = 0; f < faces; ++f) {
    col.face_color[f] = color[f] == 1 ? Color::white : Color::black;
    if (color[f] == 1) col.white[col.face_piece[f]].push_back(f);
  }
  return col;
}

GoeritzData goeritz(const OrientedDiagram& od, const Coloring& col) {
  const PlanarDiagram& d = od.diagram;
  const int n = d.size();
  GoeritzData g;
  g.crossings.resize(n);
  g.split_unlink_factor = d.free_loops > 0 && (n > 0 || d.free_loops > 1);

  const int pieces = static_cast<int>(col.white.size());
  std::vector<int> row(col.face_count(), -1);
  for (const auto& ws : col.white)
    for (size_t i = 1; i < ws.size(); ++i) row[ws[i]] = static_cast<int>(i) - 1;
  g.blocks.resize(pieces);
  for (int p = 0; p < pieces; ++p) {
    const size_t m = col.white[p].empty() ? 0 : col.white[p].size() - 1;
    g.blocks[p].G.assign(m, std::vector<long>(m, 0));
  }

  for (int c = 0; c < n; ++c) {
    auto& gc = g.crossings[c];
    const int first_white = col.face_color[col.corner_face[4 * c]] == Color::white ? 0 : 1;
    const int fa = col.corner_face[4 * c + first_white];
    const int fb = col.corner_face[4 * c + first_white + 2];
    gc.region_a = fa;
    gc.region_b = fb;
    // A crossing whose white corners share a region is nugatory; turning one
    // side over removes it without touching the other crossings' data.
    if (fa == fb) continue;
    const int u = d.crossings[c].under_slot();
    const bool zero_merges_white = (u + 1) % 2 == first_white;
    gc.incidence = zero_merges_white ? -1 : 1;
    // The oriented smoothing is the 0-smoothing at positive crossings.
    const bool oriented_merges_white = (od.sign[c] > 0) == zero_merges_white;
    gc.type = oriented_merges_white ? CrossingType::I : CrossingType::II;

    auto& blk = g.blocks[col.face_piece[fa]];
    const int ra = row[fa], rb = row[fb];
    const long eta = gc.incidence;
    if (ra >= 0) blk.G[ra][ra] += eta;
    if (rb >= 0) blk.G[rb][rb] += eta;
    if (ra >= 0 && rb >= 0) {
      blk.G[ra][rb] -= eta;
      blk.G[rb][ra] -= eta;
    }
    if (gc.type == CrossingType::II) blk.mu += gc.incidence;
  }
  for (auto& blk : g.blocks) {
    blk.sigma_G = matrix_signature(blk.G);
    blk.det_G = matrix_determinant(blk.G);
    g.mu_L += blk.mu;
    g.sigma_G += blk.sigma_G;
    g.det_G *= blk.det_G;
  }
  return g;
}

int signature(const OrientedDiagram& od, bool dual) {
  auto g = goeritz(od, checkerboard(od.diagram, dual));
  return g.sigma_G - g.mu_L;
}

int signature(const PlanarDiagram& d) { return signature(orient(d), false); }

long determinant(const PlanarDiagram& d, bool dual) {
  auto g = goeritz(orient(d), checkerboard(d, dual));
  if (g.split_unlink_factor) return 0;
  return g.det_G < 0 ? -g.det_G : g.det_G;
}

}  // namespace khw
