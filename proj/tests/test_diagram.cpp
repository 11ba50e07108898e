#include <gtest/gtest.h>

#include "khw/diagram.hpp"
#include "khw/error.hpp"
#include "khw/goeritz.hpp"
#include "khw/khovanov.hpp"
#include "support.hpp"

using namespace khw;

TEST(Braid, ParsesRepeatsAndGroups) {
  auto w = parse_braid("braid 4: 2 (-1 3^2)^2 1^3");
  EXPECT_EQ(w.strands, 4);
  EXPECT_EQ(w.letters, (std::vector<int>{2, -1, 3, 3, -1, 3, 3, 1, 1, 1}));
  EXPECT_EQ(parse_braid("braid 3: ((1 2)^2 -1)^2").letters.size(), 10u);
}

TEST(Braid, RejectsMalformedWords) {
  EXPECT_THROW(parse_braid("braid 3: 3"), ParseError);
  EXPECT_THROW(parse_braid("braid 3: (1 2"), ParseError);
  EXPECT_THROW(parse_braid("braid 3: 1 2)^2"), ParseError);
  EXPECT_THROW(parse_braid("braid 3: 1^-2"), ParseError);
  EXPECT_THROW(parse_braid("braid 3 1 2"), ParseError);
  EXPECT_THROW(parse_diagram("knot\n"), ParseError);
}

TEST(Diagram, PdRoundTrip) {
  for (const auto& [name, d] : test::corpus_diagrams()) {
    auto back = parse_diagram(write_pd(d));
    EXPECT_EQ(reduced_kh(back), reduced_kh(d)) << name;
    EXPECT_EQ(back.size(), d.size()) << name;
  }
}

TEST(Diagram, ParserRejectsBadEdgeMultiplicities) {
  EXPECT_THROW(parse_diagram("pd\nX[1,2,3,4]\n"), ParseError);
  EXPECT_THROW(parse_diagram("pd\nX[1,1,2,2]\nX[3,3,4,5]\n"), ParseError);
}

TEST(Diagram, ValidateRejectsBadDiagrams) {
  PlanarDiagram empty;
  EXPECT_THROW(validate(empty), InputError);

  PlanarDiagram lonely;
  lonely.crossings = {Crossing{{1, 2, 3, 4}}};
  lonely.basepoint = 1;
  EXPECT_THROW(validate(lonely), InputError);

  auto off_edge = test::corpus_diagram("trefoil");
  off_edge.basepoint = 999;
  EXPECT_THROW(validate(off_edge), InputError);

  auto loops = test::corpus_diagram("trefoil");
  loops.free_loops = -1;
  EXPECT_THROW(validate(loops), InputError);
}

TEST(Diagram, FigureEightSigns) {
  auto od = orient(test::corpus_diagram("fig8-knot"));
  EXPECT_EQ(od.n_plus, 2);
  EXPECT_EQ(od.n_minus, 2);
}

TEST(Diagram, MirrorIsAnInvolution) {
  for (const auto& [name, d] : test::corpus_diagrams()) {
    auto mm = mirror(mirror(d));
    EXPECT_EQ(write_pd(mm), write_pd(d)) << name;
  }
}

TEST(Diagram, ComponentCounts) {
  EXPECT_EQ(count_components(test::corpus_diagram("trefoil")), 1);
  EXPECT_EQ(count_components(test::corpus_diagram("hopf")), 2);
  EXPECT_EQ(count_components(test::corpus_diagram("borromean")), 3);
}

TEST(Diagram, ResolutionsOfTrefoilCrossing) {
  auto d = test::corpus_diagram("trefoil");
  // One smoothing of a trefoil crossing gives the Hopf link, the other an unknot.
  std::vector<long> dets = {determinant(resolve(d, 2, 0)), determinant(resolve(d, 2, 1))};
  std::sort(dets.begin(), dets.end());
  EXPECT_EQ(dets, (std::vector<long>{1, 2}));
}

TEST(Reidemeister, InvariantsOnFiftyRandomDiagrams) {
  for (const auto& [w, moved, d0, d1] : test::reidemeister_pairs(50, 20260101)) {
    ASSERT_NO_THROW(validate(d1)) << to_string(moved);
    const auto k0 = reduced_kh(d0);
    const auto k1 = reduced_kh(d1);
    EXPECT_EQ(k0, k1) << to_string(w) << " vs " << to_string(moved);
    EXPECT_EQ(determinant(d0), determinant(d1)) << to_string(w);
    EXPECT_EQ(signature(orient(d0)), signature(orient(d1))) << to_string(w);
    EXPECT_EQ(jones(k0), jones(k1)) << to_string(w);
  }
}
