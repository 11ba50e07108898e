#include <gtest/gtest.h>

#include <set>

#include "json.hpp"

#include "khw/error.hpp"
#include "khw/obstruct.hpp"
#include "khw/slopes.hpp"
#include "support.hpp"

using namespace khw;

namespace {

const StabilityReport& report(const std::string& name) {
  static std::map<std::string, StabilityReport> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, scan_integers(test::corpus_tangle(name))).first;
  return it->second;
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& t : test::corpus_tangles()) out.push_back(t.name);
  return out;
}

std::set<int> normalized_support(const FillingData& f) {
  const auto w = width(sigma_normalize(f.ranks, f.sigma));
  return {w.two_deltas.begin(), w.two_deltas.end()};
}

std::set<int> shifted(const std::set<int>& s, int by) {
  std::set<int> out;
  for (int x : s) out.insert(x + by);
  return out;
}

bool nested(const std::set<int>& a, const std::set<int>& b) {
  return std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
         std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST(Obstruct, FigureEightReport) {
  const auto& rep = report("fig8");
  EXPECT_EQ(rep.w_min, 2);
  EXPECT_EQ(rep.w_max, 3);
  ASSERT_TRUE(rep.ell.has_value());
  EXPECT_EQ(*rep.ell, 0);
  EXPECT_EQ(rep.genericity, Genericity::decay_generic);
  EXPECT_EQ(rep.adjacent_rank, 5);
  EXPECT_TRUE(rep.stabilized);
  for (int n = -5; n <= 5; ++n) {
    const auto& f = rep.at(n);
    std::vector<long> want;
    if (n < 0) want = {-n, 4, 4};
    if (n == 0) want = {1, 5, 4};
    if (n > 0) want = {4 + n, 4};
    EXPECT_EQ(f.column_ranks, want) << n;
  }
}

TEST(Obstruct, PretzelReport) {
  const auto& rep = report("pretzel-5");
  EXPECT_EQ(rep.w_min, 3);
  EXPECT_EQ(rep.w_max, 3);
  EXPECT_EQ(rep.genericity, Genericity::width_stable);
  EXPECT_TRUE(rep.stabilized);
  EXPECT_LE(rep.lo, -18);
  EXPECT_EQ(rep.at(-18).column_ranks, (std::vector<long>{18, 4, 4}));
  EXPECT_EQ(rep.at(-16).column_ranks, (std::vector<long>{17, 5, 4}));
}

TEST(Obstruct, TrefoilReport) {
  const auto& rep = report("trefoil");
  EXPECT_EQ(rep.w_min, 1);
  EXPECT_EQ(rep.w_max, 2);
  ASSERT_TRUE(rep.ell.has_value());
  EXPECT_EQ(*rep.ell, 4);
  EXPECT_EQ(rep.genericity, Genericity::decay_generic);
  EXPECT_EQ(rep.at(1).ranks.total(), 7);
  EXPECT_EQ(rep.at(1).width, 2);
}

TEST(Obstruct, TrivialReport) {
  const auto& rep = report("trivial");
  EXPECT_EQ(rep.w_min, 1);
  EXPECT_EQ(rep.w_max, 2);
  EXPECT_EQ(rep.transitions, (std::vector<int>{-1, 0}));
  EXPECT_EQ(rep.genericity, Genericity::non_generic);
  for (int n = rep.lo; n <= rep.hi; ++n) EXPECT_EQ(rep.at(n).width, n == 0 ? 2 : 1);
}

TEST(Obstruct, WidthSpreadIsAtMostOne) {
  for (const auto& name : names()) {
    const auto& rep = report(name);
    EXPECT_TRUE(rep.w_max - rep.w_min == 0 || rep.w_max - rep.w_min == 1) << name;
  }
}

TEST(Obstruct, DeterminantsOverTheWindow) {
  for (const auto& name : names()) {
    const auto& rep = report(name);
    EXPECT_TRUE(rep.det_ok) << name;
    for (const auto& f : rep.fillings) EXPECT_EQ(f.det, std::labs(f.n)) << name << " " << f.n;
  }
}

TEST(Obstruct, StabilisedTailsGrowByOneOnOneDiagonal) {
  for (const auto& name : names()) {
    const auto& rep = report(name);
    ASSERT_TRUE(rep.stabilized) << name;
    for (int k = 0; k < rep.plus.steps; ++k) {
      const auto& a = rep.at(rep.hi - k - 1);
      const auto& b = rep.at(rep.hi - k);
      EXPECT_EQ(b.ranks.total(), a.ranks.total() + 1) << name;
      EXPECT_EQ(a.columns, b.columns) << name;
    }
    for (int k = 0; k < rep.minus.steps; ++k) {
      const auto& a = rep.at(rep.lo + k + 1);
      const auto& b = rep.at(rep.lo + k);
      EXPECT_EQ(b.ranks.total(), a.ranks.total() + 1) << name;
      EXPECT_EQ(a.columns, b.columns) << name;
    }
    EXPECT_EQ(rep.minus.diagonal, rep.plus.diagonal - 2) << name;
  }
}

TEST(Obstruct, ConsecutiveFillingsDifferByOneGenerator) {
  for (const auto& name : names()) {
    const auto& rep = report(name);
    for (const auto& note : rep.notes) EXPECT_EQ(note.find("do not differ"), std::string::npos) << name;
    for (int n = rep.lo; n < rep.hi; ++n)
      EXPECT_EQ(std::labs(rep.at(n + 1).ranks.total() - rep.at(n).ranks.total()), 1) << name << n;
  }
}

TEST(Obstruct, SupportsNest) {
  // The 2-component link tau(0) sits half a diagonal off; it is moved by
  // +1/2 against tau(-1) and by -1/2 against tau(1) (doubled units below).
  for (const auto& name : names()) {
    const auto& rep = report(name);
    for (int n = rep.lo; n < rep.hi; ++n) {
      auto a = normalized_support(rep.at(n));
      auto b = normalized_support(rep.at(n + 1));
      if (n + 1 == 0) b = shifted(b, 1);
      if (n == 0) a = shifted(a, -1);
      EXPECT_TRUE(nested(a, b)) << name << " n=" << n;
    }
  }
}

TEST(Obstruct, MirrorReportReflects) {
  for (const auto& name : names()) {
    const auto& rep = report(name);
    const auto m = mirror_report(rep);
    EXPECT_EQ(m.lo, -rep.hi);
    EXPECT_EQ(m.hi, -rep.lo);
    for (int n = rep.lo; n <= rep.hi; ++n) EXPECT_EQ(m.at(-n).width, rep.at(n).width);
    EXPECT_EQ(m.w_min, rep.w_min);
    if (rep.genericity == Genericity::decay_generic)
      EXPECT_EQ(m.genericity, Genericity::expansion_generic) << name;
    if (rep.genericity == Genericity::width_stable)
      EXPECT_EQ(m.genericity, Genericity::width_stable) << name;
  }
}

TEST(Obstruct, IntervalBounds) {
  const auto& f8 = report("fig8");
  auto b = interval_bounds(f8, make_slope(1, 2));
  EXPECT_EQ(b.lower, 2);
  EXPECT_EQ(b.upper, 3);
  b = interval_bounds(f8, make_slope(-7, 2));
  EXPECT_EQ(b.lower, 3);
  EXPECT_EQ(b.upper, 3);
  b = interval_bounds(f8, make_slope(1000, 3));
  EXPECT_EQ(b.lower, 2);
  EXPECT_EQ(b.upper, 2);
  b = interval_bounds(report("trivial"), make_slope(3, 2));
  EXPECT_EQ(b.lower, 1);
  EXPECT_EQ(b.upper, 1);
  b = interval_bounds(report("trivial"), make_slope(1, 2));
  EXPECT_EQ(b.lower, 1);
  EXPECT_EQ(b.upper, 2);
  b = interval_bounds(f8, Slope{1, 0});
  EXPECT_EQ(b.upper, 1);
}

TEST(Obstruct, BoundsContainComputedWidths) {
  for (const auto& name : {"fig8", "trefoil", "trivial"}) {
    const auto& rep = report(name);
    const auto& t = test::corpus_tangle(name);
    for (auto s : {make_slope(1, 2), make_slope(5, 2), make_slope(-3, 2), make_slope(7, 3),
                   make_slope(-9, 4)}) {
      const auto b = interval_bounds(rep, s);
      const int w = width(reduced_kh(tau(t, s))).width;
      EXPECT_LE(b.lower, w) << name << " " << to_string(s);
      if (b.upper >= 0) EXPECT_GE(b.upper, w) << name << " " << to_string(s);
    }
  }
}

TEST(Obstruct, Verdicts) {
  for (const auto& v : obstruct_all(report("fig8"), Mode::lens))
    EXPECT_EQ(v.outcome, Outcome::obstructed) << to_string(v);
  for (const auto& v : obstruct_all(report("fig8"), Mode::finite))
    if (v.hi && *v.hi <= 0) EXPECT_EQ(v.outcome, Outcome::obstructed) << to_string(v);
  for (const auto& v : obstruct_all(report("pretzel-5"), Mode::finite))
    EXPECT_EQ(v.outcome, Outcome::obstructed) << to_string(v);
  for (const auto& v : obstruct_all(report("trivial"), Mode::lens))
    EXPECT_EQ(v.outcome, Outcome::inconclusive) << to_string(v);
  bool some_open = false;
  for (const auto& v : obstruct_all(report("trefoil"), Mode::lens))
    some_open = some_open || v.outcome == Outcome::inconclusive;
  EXPECT_TRUE(some_open);
}

TEST(Obstruct, FiniteObstructionImpliesLensObstruction) {
  for (const auto& name : names()) {
    const auto lens = obstruct_all(report(name), Mode::lens);
    const auto fin = obstruct_all(report(name), Mode::finite);
    ASSERT_EQ(lens.size(), fin.size());
    for (size_t i = 0; i < lens.size(); ++i)
      if (fin[i].outcome == Outcome::obstructed)
        EXPECT_EQ(lens[i].outcome, Outcome::obstructed) << name << " " << to_string(fin[i]);
  }
}

TEST(Obstruct, UnknotCertificate) {
  EXPECT_EQ(unknot_certificate(report("trivial")).verdict, UnknotVerdict::is_trivial_pattern);
  for (const char* name : {"fig8", "trefoil", "pretzel-5"})
    EXPECT_EQ(unknot_certificate(report(name)).verdict, UnknotVerdict::is_nontrivial) << name;
}

TEST(Obstruct, StrongGenericity) {
  EXPECT_FALSE(report("trivial").strong_generic);
  EXPECT_FALSE(report("fig8").strong_generic);
}

TEST(Obstruct, JsonIsDeterministicAndParses) {
  const auto text = to_json(report("fig8"));
  EXPECT_EQ(text, to_json(scan_integers(test::corpus_tangle("fig8"))));
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["w_min"], 2);
  EXPECT_EQ(j["genericity"], "decay-generic");
  EXPECT_EQ(j["fillings"].size(), report("fig8").fillings.size());
  for (const auto& f : j["fillings"])
    EXPECT_EQ(ranks_from_json(f["kh"].dump()).total(), f["rank"].get<long>());
  const auto v = nlohmann::json::parse(to_json(obstruct_all(report("fig8"), Mode::lens), Mode::lens));
  EXPECT_EQ(v["mode"], "lens");
}

TEST(Obstruct, WindowValidation) {
  ScanOptions opt;
  opt.lo = 1;
  opt.hi = 4;
  EXPECT_THROW(scan_integers(test::corpus_tangle("fig8"), opt), InputError);
}
