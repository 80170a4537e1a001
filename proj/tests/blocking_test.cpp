#include <gtest/gtest.h>

#include <functional>

#include "fullproj/blocking.hpp"
#include "fullproj/sampling.hpp"

namespace fullproj {
namespace {

Rational R(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

Pattern full_pattern(std::int64_t n) {
  std::vector<IntVector> cells;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) cells.push_back({i, j});
  return Pattern(n, cells);
}

Pattern random_pattern(Rng& rng, std::int64_t n, std::uint64_t num, std::uint64_t den) {
  std::vector<IntVector> cells;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      if (rng.chance(num, den)) cells.push_back({i, j});
  return Pattern(n, cells);
}

TEST(PatternTest, TextRoundTrip) {
  const Pattern p(3, {{2, 0}, {0, 1}});
  EXPECT_EQ(p.to_text(), "0 1\n2 0\n");
  EXPECT_EQ(Pattern::from_text(3, p.to_text()), p);
  EXPECT_THROW(Pattern(3, {{3, 0}}), Error);
}

TEST(BlockingTest, Examples) {
  EXPECT_TRUE(verify_blocking_by_traces(full_pattern(4)));
  EXPECT_TRUE(verify_blocking_by_tangents(full_pattern(4)));
  EXPECT_FALSE(verify_blocking_by_traces(Pattern(2, {{0, 0}})));
  EXPECT_FALSE(verify_blocking_by_traces(Pattern(2, {})));
  EXPECT_FALSE(verify_blocking_by_tangents(Pattern(2, {})));
  // y = 3/4 misses the closed cell [0,1/2]^2.
  EXPECT_FALSE(line_cell_intersection(Line({R(0), R(3, 4)}, {R(1), R(0)}), Cell{2, {0, 0}}));
}

TEST(BlockingTest, TangentWitnessReplays) {
  const Pattern single(2, {{0, 0}});
  const auto w = find_gap_by_tangents(single);
  ASSERT_TRUE(w);
  EXPECT_FALSE(line_cell_intersection(*w, Cell{2, {0, 0}}));
  EXPECT_TRUE(line_cell_intersection(*w, Cell{1, {0, 0}}));
}

TEST(BlockingTest, MethodsAgreeOnRandomPatterns) {
  Rng rng(kDefaultSeed);
  for (std::int64_t n = 1; n <= 6; ++n) {
    const auto family = enumerate_traces_2d(n);
    for (int trial = 0; trial < 150; ++trial) {
      const Pattern p = random_pattern(rng, n, static_cast<std::uint64_t>(rng.uniform(1, 9)), 10);
      const bool by_traces = verify_blocking_by_traces(p, family);
      ASSERT_EQ(by_traces, verify_blocking_by_tangents(p)) << p.to_text();
      ASSERT_EQ(by_traces, !find_avoiding_line(p.cells()).has_value()) << p.to_text();
    }
  }
}

// Smallest hitting set of the trace family, by branching on a smallest
// trace that is not hit yet.
std::size_t min_blocking_size(const TraceFamily2D& family, std::size_t limit) {
  const std::int64_t n = family.n();
  std::vector<char> chosen(static_cast<std::size_t>(n * n), 0);
  std::size_t best = limit + 1;
  std::function<void(std::size_t)> go = [&](std::size_t size) {
    if (size >= best) return;
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < family.size(); ++i) {
      const auto cells = family.cells(i);
      if (std::any_of(cells.begin(), cells.end(), [&](std::uint32_t c) { return chosen[c] != 0; })) continue;
      if (!pick || cells.size() < family.cells(*pick).size()) pick = i;
      if (cells.size() == 1) break;
    }
    if (!pick) {
      best = size;
      return;
    }
    if (size + 1 >= best) return;
    for (std::uint32_t c : family.cells(*pick)) {
      chosen[c] = 1;
      go(size + 1);
      chosen[c] = 0;
    }
  };
  go(0);
  return best;
}

TEST(BlockingTest, BlockingNeedsAtLeastTwoNMinusOneCells) {
  for (std::int64_t n = 1; n <= 6; ++n) {
    const auto family = enumerate_traces_2d(n);
    const std::size_t bound = static_cast<std::size_t>(2 * n - 1);
    // Nothing smaller than 2n - 1 blocks.
    EXPECT_GE(min_blocking_size(family, bound - 1), bound) << "n=" << n;
  }
}

TEST(AvoidanceTest, HalfGridIndexToVector) {
  const AvoidanceWitness w{14, 15, {}, {}};
  EXPECT_EQ(w.vx(10), R(29, 20));
  EXPECT_EQ(w.vy(10), R(31, 20));
  EXPECT_EQ(w.vx(10), R(145, 100));
}

TEST(AvoidanceTest, OverlapRuleExample) {
  // (13,14) lies in T- for (p,q) = (14,15) and t = (0,0), and equals
  // (3,4) + (10,10) in T+.
  const Pattern p(10, {{0, 0}, {3, 4}});
  EXPECT_FALSE(avoidance_holds(p, 14, 15));
  const auto w = avoidance_witness(p, 14, 15);
  EXPECT_NE(std::find(w.t_minus.begin(), w.t_minus.end(), IntVector{13, 14}), w.t_minus.end());
  EXPECT_NE(std::find(w.t_plus.begin(), w.t_plus.end(), IntVector{13, 14}), w.t_plus.end());
  EXPECT_FALSE(verify_sumset_avoidance(full_pattern(10)));
}

// For a reported witness, sampled points of v - K1 avoid K1 + z.
TEST(AvoidanceTest, ContinuousReplay) {
  Rng rng(59);
  std::size_t witnesses = 0;
  for (int trial = 0; trial < 400 && witnesses < 10; ++trial) {
    const std::int64_t n = rng.uniform(3, 8);
    const Pattern p = random_pattern(rng, n, 1, 5);
    if (p.size() == 0) continue;
    const auto w = verify_sumset_avoidance(p);
    if (!w) continue;
    ++witnesses;
    // T+ and T- are disjoint as integer sets.
    for (const auto& c : w->t_minus)
      EXPECT_EQ(std::find(w->t_plus.begin(), w->t_plus.end(), c), w->t_plus.end());
    const Rational vx = w->vx(n), vy = w->vy(n);
    for (int s = 0; s < 1000; ++s) {
      const auto cell = p.cells()[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(p.size()) - 1))];
      const Rational x = vx - Rational(cell[0] * 64 + rng.uniform(0, 64), 64 * n);
      const Rational y = vy - Rational(cell[1] * 64 + rng.uniform(0, 64), 64 * n);
      for (std::int64_t zx = -1; zx <= 2; ++zx)
        for (std::int64_t zy = -1; zy <= 2; ++zy)
          for (std::size_t k = 0; k < p.size(); ++k) {
            const Box b = cell_box(Cell{n, {p.cells()[k][0], p.cells()[k][1]}});
            const bool inside = x - R(zx) >= b.lo[0] && x - R(zx) <= b.hi[0] && y - R(zy) >= b.lo[1] &&
                                y - R(zy) <= b.hi[1];
            ASSERT_FALSE(inside);
          }
    }
  }
  EXPECT_GT(witnesses, 0u);
}

TEST(CertificateTest, Errors) {
  try {
    make_certificate(full_pattern(3));
    FAIL();
  } catch (const CertificateError& e) {
    EXPECT_STREQ(e.what(), "no avoidance vector exists");
  }
  try {
    make_certificate(Pattern(3, {{1, 1}}));
    FAIL();
  } catch (const CertificateError& e) {
    EXPECT_STREQ(e.what(), "blocking failed (witness line attached)");
    ASSERT_TRUE(e.witness());
    EXPECT_FALSE(line_cell_intersection(*e.witness(), Cell{3, {1, 1}}));
  }
}

TEST(CertificateTest, JsonRoundTripAndValidation) {
  const Certificate c{Pattern(10, {{0, 0}, {9, 9}}), {true, true, 10644}, {14, 15, {}, {}}};
  const std::string text = c.to_json();
  EXPECT_NE(text.find("\"29/20\""), std::string::npos);
  const Certificate back = Certificate::from_json(text);
  EXPECT_EQ(back.pattern, c.pattern);
  EXPECT_EQ(back.avoidance.p, 14);
  EXPECT_EQ(back.to_json(), text);
  EXPECT_THROW(Certificate::from_json(text.substr(0, text.size() / 2)), CertificateFormatError);
  EXPECT_THROW(Certificate::from_json("{\"schemaVersion\": 2}"), CertificateFormatError);
}

}  // namespace
}  // namespace fullproj
