#include <gtest/gtest.h>

#include <random>

#include "khw/error.hpp"
#include "khw/goeritz.hpp"
#include "khw/slopes.hpp"
#include "support.hpp"

using namespace khw;

TEST(Slopes, FillingOrder) {
  EXPECT_EQ(filling_order(knot_system(), make_slope(7, 3)), 7);
  EXPECT_EQ(filling_order(knot_system(), make_slope(-5, 1)), 5);
  EXPECT_EQ(filling_order(knot_system(), Slope{1, 0}), 1);
  SlopeSystem sys{2, 1, 3};
  EXPECT_EQ(filling_order(sys, make_slope(1, 1)), 3);
  EXPECT_EQ(filling_order(sys, make_slope(0, 1)), 6);
}

TEST(Slopes, ThirteenTenthsCertificate) {
  auto cert = qa_propagate(knot_system(), 1, 1, make_slope(13, 10));
  EXPECT_EQ(cert.nodes.front().det, 23);
  EXPECT_EQ(cert.depth, 7);
  EXPECT_TRUE(cert.additive);
  for (const auto& nd : cert.nodes) EXPECT_EQ(nd.det, nd.slope.p + nd.slope.q);
}

TEST(Slopes, TriadHypothesisIsChecked) {
  EXPECT_THROW(qa_propagate(knot_system(), 0, 1, make_slope(3, 2)), InputError);
  EXPECT_THROW(qa_propagate(knot_system(), 1, -1, make_slope(3, 2)), InputError);
  EXPECT_THROW(qa_propagate(knot_system(), 1, 1, make_slope(-3, 2)), InputError);
  EXPECT_THROW(qa_propagate(knot_system(), 1, 1, make_slope(300, 7), 100), InputError);
}

TEST(Slopes, LegsAreLeaves) {
  auto inf = qa_propagate(knot_system(), 2, 3, Slope{1, 0});
  EXPECT_EQ(inf.nodes.size(), 1u);
  EXPECT_EQ(inf.nodes[0].det, 2);
  auto zero = qa_propagate(knot_system(), 2, 3, make_slope(0, 1));
  EXPECT_EQ(zero.nodes[0].det, 3);
}

TEST(Slopes, CertificateMatchesTwistedTangleClosures) {
  // One extra half-twist makes tau(0) the old tau(1), so both legs have
  // determinant 1 and every node should have det p + q.
  for (const char* name : {"trivial", "fig8", "trefoil"}) {
    const Tangle t = twist(test::corpus_tangle(name), 1);
    for (auto s : {make_slope(13, 10), make_slope(5, 3), make_slope(7, 2)}) {
      auto cert = qa_propagate(knot_system(), 1, 1, s);
      std::string why;
      EXPECT_TRUE(check_against(cert, t, &why)) << name << " " << to_string(s) << ": " << why;
    }
  }
  std::string why;
  auto cert = qa_propagate(knot_system(), 1, 1, make_slope(8, 5));
  EXPECT_FALSE(check_against(cert, trivial_tangle(), &why));
  EXPECT_FALSE(why.empty());
}

TEST(Slopes, FareyAdditivityOnRandomSlopes) {
  std::mt19937 rng(7);
  for (const auto& [name, t, offset] : test::corpus_tangles()) {
    int done = 0;
    while (done < 20) {
      const long q = std::uniform_int_distribution<long>(1, 6)(rng);
      const long p = std::uniform_int_distribution<long>(1, 12)(rng);
      const Slope s = make_slope(p, q);
      if (s.p != p || s.q != q || s.is_integer()) continue;
      const auto res = cf_resolve(cf_expand(s));
      const long d = determinant(tau(t, s));
      const long d0 = determinant(tau(t, res.zero.value));
      const long d1 = determinant(tau(t, res.one.value));
      EXPECT_EQ(d, d0 + d1) << name << " " << to_string(s);
      EXPECT_EQ(d, filling_order(knot_system(), s)) << name << " " << to_string(s);
      ++done;
    }
  }
}

TEST(Slopes, JsonHasEveryNode) {
  auto cert = qa_propagate(knot_system(), 1, 1, make_slope(5, 3));
  const auto text = to_json(cert);
  EXPECT_NE(text.find("\"target\": \"5/3\""), std::string::npos);
  EXPECT_NE(text.find("\"additive\": true"), std::string::npos);
}
