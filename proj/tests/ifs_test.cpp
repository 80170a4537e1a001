#include <gtest/gtest.h>

#include <set>

#include "fullproj/classify.hpp"
#include "fullproj/ifs.hpp"
#include "fullproj/sampling.hpp"
#include "fullproj/search.hpp"

using namespace fullproj;

namespace {

const LocalSearchResult& certified_ten() {
  static const LocalSearchResult r = [] {
    const auto family = enumerate_traces_2d(10);
    return local_search_run(greedy_blocking_cover(family), family, 1000000, 1);
  }();
  return r;
}

Pattern random_pattern(Rng& rng, std::int64_t n, int percent) {
  std::vector<IntVector> cells;
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      if (rng.chance(static_cast<std::uint64_t>(percent), 100)) cells.push_back({a, b});
  if (cells.empty()) cells.push_back({0, 0});
  return Pattern(n, cells);
}

// Direct replay with rationals: every lattice point (v + z)/n^(j-1) in
// [0,2]^2 against every pair of depth-i cells.
bool brute_collision(const IfsSystem& sys, std::int64_t p, std::int64_t q, int depth) {
  const CellSet k = iterate(sys, depth);
  const std::int64_t n = sys.n(), N = k.n();
  std::set<std::pair<std::int64_t, std::int64_t>> sums;
  for (std::size_t a = 0; a < k.size(); ++a)
    for (std::size_t b = 0; b < k.size(); ++b) sums.insert({k[a][0] + k[b][0], k[a][1] + k[b][1]});
  std::int64_t scale = 1;
  for (int j = 1; j <= depth; ++j) {
    for (std::int64_t zx = -2; zx <= 2 * scale + 2; ++zx)
      for (std::int64_t zy = -2; zy <= 2 * scale + 2; ++zy) {
        const Rational x = (Rational(2 * p + 1, 2 * n) + Rational(zx)) / Rational(scale);
        const Rational y = (Rational(2 * q + 1, 2 * n) + Rational(zy)) / Rational(scale);
        if (x < Rational(0) || y < Rational(0) || x > Rational(2) || y > Rational(2)) continue;
        for (const auto& [ux, uy] : sums)
          if (Rational(ux, N) <= x && x <= Rational(ux + 2, N) && Rational(uy, N) <= y && y <= Rational(uy + 2, N))
            return true;
      }
    scale *= n;
  }
  return false;
}

}  // namespace

TEST(Ifs, RejectsInvalidMaps) {
  EXPECT_THROW(IfsSystem(2, 3, {{0, 0}, {0, 0}}), Error);
  EXPECT_THROW(IfsSystem(2, 3, {{0, 3}}), Error);
  EXPECT_THROW(IfsSystem(2, 3, {{0, 1, 2}}), Error);
  EXPECT_NO_THROW(IfsSystem(2, 3, {{0, 0}, {2, 1}}));
}

TEST(Ifs, IterateCountsAndNesting) {
  const Pattern t(4, {{0, 0}, {1, 3}, {2, 1}, {3, 2}, {3, 3}});
  const IfsSystem sys = IfsSystem::from_pattern(t);
  EXPECT_EQ(iterate(sys, 1), t.cells());
  const CellSet k2 = iterate(sys, 2), k3 = iterate(sys, 3);
  EXPECT_EQ(k2.size(), 25u);
  EXPECT_EQ(k3.size(), 125u);
  EXPECT_EQ(k3.n(), 64);
  for (std::size_t i = 0; i < k3.size(); ++i) {
    const IntVector parent{k3[i][0] / 4, k3[i][1] / 4};
    EXPECT_TRUE(k2.contains(parent));
  }
  EXPECT_THROW(iterate(sys, 40), Error);
  EXPECT_THROW(iterate(sys, 4, 100), Error);
}

TEST(Ifs, LatticeReplayAgreesWithDepthOneAvoidance) {
  Rng rng(5);
  for (std::int64_t n = 2; n <= 6; ++n)
    for (int rep = 0; rep < 40; ++rep) {
      const Pattern t = random_pattern(rng, n, 15 + rep);
      const IfsSystem sys = IfsSystem::from_pattern(t);
      for (std::int64_t p = n; p < 2 * n; ++p)
        for (std::int64_t q = n; q < 2 * n; ++q)
          ASSERT_EQ(!find_sumset_lattice_collision(sys, p, q, 1).has_value(), avoidance_holds(t, p, q))
              << n << " " << p << " " << q << "\n" << t.to_text();
    }
}

TEST(Ifs, LatticeReplayMatchesBruteForceAtDepthTwo) {
  Rng rng(17);
  for (std::int64_t n = 2; n <= 4; ++n)
    for (int rep = 0; rep < 12; ++rep) {
      const Pattern t = random_pattern(rng, n, 20 + 3 * rep);
      const IfsSystem sys = IfsSystem::from_pattern(t);
      const std::int64_t p = n + rng.uniform(0, n - 1), q = n + rng.uniform(0, n - 1);
      ASSERT_EQ(find_sumset_lattice_collision(sys, p, q, 2).has_value(), brute_collision(sys, p, q, 2))
          << n << " " << p << " " << q << "\n" << t.to_text();
    }
}

TEST(Ifs, CertifiedPatternAvoidsAtDepthThree) {
  const auto& r = certified_ten();
  ASSERT_TRUE(r.feasible);
  const IfsSystem sys = IfsSystem::from_pattern(r.pattern);
  const AvoidanceWitness w = avoidance_witness(r.pattern, r.vector->first, r.vector->second);
  for (int depth = 1; depth <= 3; ++depth) EXPECT_TRUE(sumset_lattice_avoidance(sys, w, depth)) << depth;
}

TEST(Ifs, CollidingPatternExhibitsPoint) {
  // Full grid: K + K is everything.
  std::vector<IntVector> all;
  for (std::int64_t a = 0; a < 3; ++a)
    for (std::int64_t b = 0; b < 3; ++b) all.push_back({a, b});
  const IfsSystem sys(2, 3, all);
  const auto c = find_sumset_lattice_collision(sys, 4, 4, 2);
  ASSERT_TRUE(c.has_value());
  const Rational x = (Rational(9, 6) + Rational(c->z[0])) / Rational(c->level == 1 ? 1 : 3);
  EXPECT_LE(Rational(c->sum_cell[0], 9), x);
  EXPECT_LE(x, Rational(c->sum_cell[0] + 2, 9));
}

TEST(Ifs, OpenSetCondition) {
  const IfsSystem sys(2, 4, {{0, 0}, {0, 1}, {1, 0}});
  EXPECT_TRUE(open_set_condition(sys));
  EXPECT_FALSE(open_set_condition(2, 4, {{0, 0}, {0, 1}, {0, 0}}));
}

TEST(Ifs, ProductLift) {
  const CellSet single(2, 2, {{1, 0}});
  const CellSet lifted = product_lift(single);
  EXPECT_EQ(lifted.dim(), 3);
  EXPECT_EQ(lifted.size(), 2u);
  const Pattern t(3, {{0, 0}, {1, 2}, {2, 1}});
  const CellSet lt = product_lift(t.cells());
  EXPECT_EQ(lt.size(), t.size() * 3);
  // Sum of the lift is the lifted sum times [0,2].
  const CellSet sum2 = minkowski_sum(t.cells(), t.cells());
  std::vector<IntVector> expect;
  for (const auto& c : sum2.cells())
    for (std::int64_t s = 0; s < 6; ++s) expect.push_back({c[0], c[1], s});
  EXPECT_EQ(minkowski_sum(lt, lt), CellSet(3, 3, expect, true));
}

TEST(Ifs, DesklegsLift) {
  EXPECT_THROW(desklegs_lift(CellSet(2, 3, {{1, 1}})), Error);
  const Pattern t(4, {{0, 0}, {1, 2}, {2, 1}, {3, 3}});
  const CellSet k = desklegs_lift(t.cells());
  EXPECT_EQ(k.dim(), 3);
  for (std::int64_t s = 0; s < 4; ++s)
    for (std::int64_t x : {0, 3})
      for (std::int64_t y : {0, 3}) EXPECT_TRUE(k.contains(IntVector{x, y, s}));
  for (const auto& c : t.cells().cells()) EXPECT_TRUE(k.contains(IntVector{c[0], c[1], 0}));
}

TEST(Ifs, SelfSimilarLift) {
  const Pattern t(3, {{0, 0}, {1, 2}, {2, 1}});
  const IfsSystem two = selfsimilar_lift(t, 2);
  EXPECT_EQ(two.maps(), t.cells().cells());
  const IfsSystem three = selfsimilar_lift(t, 3);
  EXPECT_EQ(three.maps().size(), 9u);
  EXPECT_TRUE(open_set_condition(three));
  EXPECT_EQ(selfsimilar_lift(t, 4).maps().size(), 27u);
}

TEST(Ifs, SvgViewBox) {
  const Pattern t(4, {{0, 0}, {0, 1}, {2, 3}});
  const std::string svg = render_svg(iterate(IfsSystem::from_pattern(t), 2));
  EXPECT_NE(svg.find("viewBox=\"0 0 16 16\""), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  auto count_rects = [](const std::string& text) {
    const auto g = text.find("<g"), e = text.find("</g>");
    std::size_t c = 0;
    for (auto p = text.find("<rect", g); p != std::string::npos && p < e; p = text.find("<rect", p + 1)) ++c;
    return c;
  };
  EXPECT_EQ(count_rects(svg), 9u);
  SvgStyle merged;
  merged.merge_runs = true;
  // (0,0) and (0,1) stack into runs at x = 0.
  EXPECT_LT(count_rects(render_svg(iterate(IfsSystem::from_pattern(t), 2), merged)), 9u);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(2, 1, 2).verdict, Verdict::Exists);
  EXPECT_EQ(classify(3, 1, 2).verdict, Verdict::Open);
  EXPECT_EQ(classify(3, 3, 5).verdict, Verdict::Open);
  EXPECT_EQ(classify(2, 1, 3).verdict, Verdict::NotExists);
  const auto r = classify(5, 4, 5);
  EXPECT_EQ(r.verdict, Verdict::Exists);
  EXPECT_TRUE(replay_derivation(r, {5, 4, 5}));
  EXPECT_THROW(classify(1, 1, 2), Error);
  EXPECT_THROW(classify(2, 2, 2), Error);
}

TEST(Classify, ExistsAndBoundAreConsistent) {
  for (int d = 2; d <= 12; ++d)
    for (int l = 2; l <= 8; ++l)
      for (int k = 1; k < d; ++k) {
        const auto r = classify(l, k, d);
        ASSERT_TRUE(replay_derivation(r, {l, k, d})) << l << k << d;
        // (d-1)-flats: existence exactly for l <= d.
        if (k == d - 1) EXPECT_EQ(r.verdict == Verdict::Exists, l <= d);
        // Two-fold sums: existence exactly for 2k >= d.
        if (l == 2) EXPECT_EQ(r.verdict == Verdict::Exists, 2 * k >= d);
        if (l == 2) EXPECT_EQ(r.verdict == Verdict::NotExists, 2 * k < d);
      }
}
