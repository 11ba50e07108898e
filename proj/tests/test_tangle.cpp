#include <gtest/gtest.h>

#include "khw/error.hpp"
#include "khw/goeritz.hpp"
#include "khw/khovanov.hpp"
#include "khw/tangle.hpp"
#include "support.hpp"

using namespace khw;

TEST(ContinuedFraction, Examples) {
  EXPECT_EQ(cf_evaluate({1, 3, 3}), make_slope(13, 10));
  EXPECT_EQ(cf_expand(make_slope(13, 10)).terms, (std::vector<int>{1, 3, 3}));
  EXPECT_EQ(cf_expand(make_slope(5, 1)).terms, (std::vector<int>{5}));
  EXPECT_EQ(cf_expand(make_slope(0, 1)).terms, (std::vector<int>{0}));
  EXPECT_TRUE(cf_expand(make_slope(1, 0)).terms.empty());
  auto neg = cf_expand(make_slope(-7, 3));
  EXPECT_TRUE(neg.mirrored);
  EXPECT_EQ(neg.terms, (std::vector<int>{2, 3}));
  EXPECT_THROW(make_slope(0, 0), InputError);
}

TEST(ContinuedFraction, ResolutionsAreFareyParents) {
  for (long p = 1; p <= 20; ++p)
    for (long q = 1; q <= 20; ++q) {
      const Slope s = make_slope(p, q);
      if (s.p != p) continue;
      const auto res = cf_resolve(cf_expand(s));
      const Slope a = res.zero.value, b = res.one.value;
      EXPECT_EQ(a.p + b.p, s.p) << to_string(s);
      EXPECT_EQ(a.q + b.q, s.q) << to_string(s);
      EXPECT_EQ(std::labs(a.p * b.q - a.q * b.p), 1) << to_string(s);
    }
}

TEST(Tangle, TrivialTangleGivesTorusLinks) {
  const auto t = trivial_tangle();
  for (int n = 1; n <= 5; ++n) {
    auto d = tau(t, make_slope(n, 1));
    EXPECT_EQ(d.size(), n);
    EXPECT_EQ(determinant(d), n);
    EXPECT_EQ(width(reduced_kh(d)).width, n == 0 ? 2 : 1);
  }
  auto t5 = reduced_kh(tau(t, make_slope(5, 1)));
  auto torus = reduced_kh(test::corpus_diagram("5_1"));
  EXPECT_EQ(t5.total(), torus.total());
}

TEST(Tangle, Calibration) {
  EXPECT_EQ(calibrate(trivial_tangle()).offset, 0);
  const std::map<std::string, int> offsets = {
      {"trivial", 0}, {"fig8", 0}, {"trefoil", 0}, {"pretzel-5", 0}, {"pretzel-5-family", -20}};
  for (const auto& t : test::corpus_tangles()) {
    ASSERT_TRUE(offsets.count(t.name)) << t.name;
    EXPECT_EQ(t.offset, offsets.at(t.name)) << t.name;
  }
}

TEST(Tangle, DeterminantOfIntegerFillingsIsAbsN) {
  for (const auto& [name, t, offset] : test::corpus_tangles())
    for (int n = -6; n <= 6; ++n)
      EXPECT_EQ(determinant(tau(t, make_slope(n, 1))), std::labs(n)) << name << " n=" << n;
}

TEST(Tangle, InfinityFillingIsTheUnknot) {
  for (const auto& [name, t, offset] : test::corpus_tangles())
    EXPECT_EQ(reduced_kh(tau(t, Slope{1, 0})).total(), 1) << name;
}

TEST(Tangle, FigureEightFillingsAreBetaClosures) {
  const auto& t = test::corpus_tangle("fig8");
  for (int n = -3; n <= 3; ++n) {
    BraidWord beta = parse_braid("braid 3: -1 -2^2 -1^2 -2^2 -1^2");
    const int e = -4 + n;
    beta.letters.insert(beta.letters.end(), std::abs(e), e < 0 ? -2 : 2);
    EXPECT_EQ(reduced_kh(tau(t, make_slope(n, 1))), reduced_kh(braid_closure(beta))) << n;
  }
  EXPECT_EQ(tau(t, make_slope(0, 1)).size(), 13);
}

TEST(Tangle, NegativeSlopesUseTheMirror) {
  const auto& t = test::corpus_tangle("trefoil");
  for (auto s : {make_slope(2, 1), make_slope(3, 2), make_slope(7, 3)}) {
    auto direct = reduced_kh(tau(t, -s));
    auto via = mirror_ranks(reduced_kh(tau(mirror(t), s)));
    EXPECT_EQ(direct, via) << to_string(s);
  }
}

TEST(Tangle, TerminalCrossingResolvesToParents) {
  for (const auto& [name, t, offset] : test::corpus_tangles()) {
    if (name == "pretzel-5-family") continue;
    for (auto s : {make_slope(3, 2), make_slope(5, 3), make_slope(7, 2), make_slope(4, 3)}) {
      const auto d = tau(t, s);
      const int c = terminal_crossing(t, s);
      ASSERT_GE(c, 0);
      const auto res = cf_resolve(cf_expand(s));
      EXPECT_EQ(determinant(resolve(d, c, 0)), determinant(tau(t, res.zero.value)))
          << name << " " << to_string(s);
      EXPECT_EQ(determinant(resolve(d, c, 1)), determinant(tau(t, res.one.value)))
          << name << " " << to_string(s);
    }
  }
}

TEST(Tangle, OddClosureMatchesEvenClosureOfSplitExpansion) {
  for (const auto& [name, t, offset] : test::corpus_tangles()) {
    if (name.rfind("pretzel", 0) == 0) continue;
    for (auto terms : {std::vector<int>{1, 2, 3}, std::vector<int>{2, 1, 2}, std::vector<int>{3}}) {
      ContinuedFraction odd{terms, cf_evaluate(terms), false};
      auto split = terms;
      split.back() -= 1;
      split.push_back(1);
      ContinuedFraction even{split, cf_evaluate(split), false};
      ASSERT_EQ(odd.value, even.value);
      const auto rb_odd = braid_of_cf(odd);
      const auto rb_even = braid_of_cf(even);
      ASSERT_EQ(rb_odd.closure, Closure::odd);
      ASSERT_EQ(rb_even.closure, Closure::even);
      EXPECT_EQ(reduced_kh(close_with(t, rb_odd)), reduced_kh(close_with(t, rb_even)))
          << name << " " << to_string(odd.value);
    }
  }
}

TEST(Tangle, FileRoundTrip) {
  for (const auto& [name, t, offset] : test::corpus_tangles()) {
    const Tangle back = parse_tangle(write_tangle(t));
    EXPECT_NO_THROW(validate(back));
    for (int n : {-2, 1, 3})
      EXPECT_EQ(reduced_kh(tau(back, make_slope(n, 1))), reduced_kh(tau(t, make_slope(n, 1))))
          << name << " n=" << n;
  }
}

TEST(Tangle, ParserErrors) {
  EXPECT_THROW(parse_tangle("tangle\nbraid 3: 1 2\n"), ParseError);
  EXPECT_THROW(parse_tangle("pd\nX[1,2,3,4]\n"), ParseError);
  EXPECT_THROW(parse_tangle("tangle\ncolour: red\n"), ParseError);
}

TEST(Tangle, TwistShiftsIntegerFillings) {
  const auto& t = test::corpus_tangle("trefoil");
  const auto shifted = twist(t, 3);
  for (int n = -2; n <= 2; ++n)
    EXPECT_EQ(reduced_kh(tau(shifted, make_slope(n, 1))), reduced_kh(tau(t, make_slope(n + 3, 1))));
}
