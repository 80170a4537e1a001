#include <gtest/gtest.h>

#include "fullproj/grid.hpp"
#include "fullproj/sampling.hpp"

namespace fullproj {
namespace {

Rational R(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

TEST(RationalTest, LowestTermsAndParse) {
  EXPECT_EQ(R(6, -4).to_string(), "-3/2");
  EXPECT_EQ(Rational::parse("29/20"), R(29, 20));
  EXPECT_EQ(Rational::parse("-7"), R(-7));
  EXPECT_EQ(Rational::parse("10/4").to_string(), "5/2");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
  EXPECT_EQ(R(-7, 2).floor(), R(-4));
  EXPECT_LT(R(1, 3), R(1, 2));
}

TEST(CellBoxTest, Examples) {
  Box b = cell_box(Cell{10, {3, 4}});
  EXPECT_EQ(b.lo, (RationalVector{R(3, 10), R(4, 10)}));
  EXPECT_EQ(b.hi, (RationalVector{R(4, 10), R(5, 10)}));
  Box unit = cell_box(Cell{1, {0, 0, 0}});
  EXPECT_EQ(unit.lo, RationalVector(3, R(0)));
  EXPECT_EQ(unit.hi, RationalVector(3, R(1)));
  Box c = cell_box(Cell{2, {1, 0}});
  EXPECT_EQ(c.lo, (RationalVector{R(1, 2), R(0)}));
  EXPECT_EQ(c.hi, (RationalVector{R(1), R(1, 2)}));
}

TEST(CellBoxTest, RefinementNests) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = rng.uniform(1, 7), k = rng.uniform(1, 5);
    IntVector t{rng.uniform(0, n - 1), rng.uniform(0, n - 1), rng.uniform(0, n - 1)};
    IntVector fine(3);
    for (int i = 0; i < 3; ++i) fine[static_cast<std::size_t>(i)] = k * t[static_cast<std::size_t>(i)] + rng.uniform(0, k - 1);
    Box outer = cell_box(Cell{n, t}), inner = cell_box(Cell{k * n, fine});
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LE(outer.lo[i], inner.lo[i]);
      EXPECT_LE(inner.hi[i], outer.hi[i]);
    }
  }
}

TEST(LineCellIntersectionTest, Examples) {
  const Cell unit{1, {0, 0}};
  auto diag = line_cell_intersection(Line({R(0), R(0)}, {R(1), R(1)}), unit);
  ASSERT_TRUE(diag);
  EXPECT_EQ(diag->a, (RationalVector{R(0), R(0)}));
  EXPECT_EQ(diag->b, (RationalVector{R(1), R(1)}));
  EXPECT_FALSE(line_cell_intersection(Line({R(0), R(2)}, {R(1), R(0)}), unit));
  auto touch = line_cell_intersection(Line({R(1), R(0)}, {R(1), R(1)}), unit);
  ASSERT_TRUE(touch);
  EXPECT_EQ(touch->a, touch->b);
  EXPECT_EQ(touch->a, (RationalVector{R(1), R(0)}));
}

TEST(DiamInfTest, Examples) {
  EXPECT_EQ(diam_inf(Segment{{R(0), R(0)}, {R(1), R(1)}}), R(1));
  EXPECT_EQ(diam_inf(Segment{{R(1, 3), R(1)}, {R(1, 3), R(1)}}), R(0));
  EXPECT_EQ(diam_inf(Segment{{R(0), R(0)}, {R(1), R(1, 2)}}), R(1));
}

TEST(StronglyIntersectsTest, Examples) {
  const Cell unit{1, {0, 0}};
  EXPECT_TRUE(strongly_intersects(Line({R(0), R(0)}, {R(1), R(1)}), unit));
  EXPECT_FALSE(strongly_intersects(Line({R(1), R(0)}, {R(1), R(1)}), unit));
  // x + y = 1/4 cuts a chord with both projections of length exactly 1/4.
  EXPECT_TRUE(strongly_intersects(Line({R(1, 4), R(0)}, {R(-1), R(1)}), unit));
  EXPECT_FALSE(strongly_intersects(Line({R(1, 5), R(0)}, {R(-1), R(1)}), unit));
}

TEST(StronglyIntersectsTest, InvariantUnderHomothety) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t n = rng.uniform(1, 6);
    const Cell cell{n, {rng.uniform(0, n - 1), rng.uniform(0, n - 1)}};
    const Line line = random_line_through_cube(rng, 2, n);
    const Rational lambda(rng.uniform(1, 9), rng.uniform(1, 9));
    const RationalVector shift{R(rng.uniform(-5, 5), rng.uniform(1, 4)), R(rng.uniform(-5, 5), rng.uniform(1, 4))};
    RationalVector base(2), dir(2);
    Box box = cell_box(cell);
    for (std::size_t i = 0; i < 2; ++i) {
      base[i] = lambda * line.base()[i] + shift[i];
      dir[i] = lambda * line.dir()[i];
      box.lo[i] = lambda * box.lo[i] + shift[i];
      box.hi[i] = lambda * box.hi[i] + shift[i];
    }
    EXPECT_EQ(strongly_intersects(line, cell), strongly_intersects(Line(base, dir), box));
  }
}

TEST(RefaxTest, Examples) {
  EXPECT_EQ(refax(Line({R(0), R(0)}, {R(1), R(1, 2)})), 1);
  EXPECT_EQ(refax(Line({R(0), R(0)}, {R(1, 2), R(1)})), 2);
  EXPECT_EQ(refax(Line({R(0), R(0)}, {R(1), R(1)})), 1);
  EXPECT_EQ(refax(Line({R(0), R(0)}, {R(-3), R(2)})), 1);
}

TEST(LineTest, CanonicalFormIdentifiesPointSets) {
  const Line a({R(0), R(1, 2)}, {R(2), R(1)});
  const Line b({R(2), R(3, 2)}, {R(-4), R(-2)});
  EXPECT_TRUE(a.same_points(b));
  EXPECT_FALSE(a.same_points(Line({R(0), R(1, 3)}, {R(2), R(1)})));
  EXPECT_THROW(Line({R(0), R(0)}, {R(0), R(0)}), Error);
}

TEST(CellSetTest, CanonicalAndValidated) {
  CellSet s(2, 3, {{2, 1}, {0, 2}, {2, 1}, {0, 0}});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.cells(), (std::vector<IntVector>{{0, 0}, {0, 2}, {2, 1}}));
  EXPECT_TRUE(s.contains(IntVector{0, 2}));
  EXPECT_FALSE(s.contains(IntVector{1, 2}));
  EXPECT_THROW(CellSet(2, 3, {{3, 0}}), Error);
  EXPECT_NO_THROW(CellSet(2, 3, {{3, 0}}, true));
}

TEST(MinkowskiSumTest, Examples) {
  CellSet unit(2, 1, {{0, 0}});
  EXPECT_EQ(minkowski_sum(unit, unit).cells(), (std::vector<IntVector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  EXPECT_TRUE(minkowski_sum(unit, CellSet(2, 1)).empty());
  // [0,1/2]^2 + [1/2,1]^2 = [1/2,3/2]^2
  auto s = minkowski_sum(CellSet(2, 2, {{0, 0}}), CellSet(2, 2, {{1, 1}}));
  EXPECT_EQ(s.cells(), (std::vector<IntVector>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}));
  EXPECT_THROW(minkowski_sum(CellSet(2, 2), CellSet(2, 3)), Error);
}

// Union of sum cells equals the pointwise sum of unions, checked on the
// lattice of quarter-cell points.
TEST(MinkowskiSumTest, MatchesPointSampling) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t n = rng.uniform(1, 4);
    std::vector<IntVector> ca, cb;
    for (int k = 0; k < 3; ++k) {
      ca.push_back({rng.uniform(0, n - 1), rng.uniform(0, n - 1)});
      cb.push_back({rng.uniform(0, n - 1), rng.uniform(0, n - 1)});
    }
    const CellSet a(2, n, ca), b(2, n, cb);
    const CellSet s = minkowski_sum(a, b);
    EXPECT_EQ(s, minkowski_sum(b, a));
    // A point (x, y) with x, y multiples of 1/(4n) in [0, 2] is in the
    // sumset iff it is p + q with p in a cell of a and q in a cell of b.
    auto in_sum = [&](std::int64_t X, std::int64_t Y) {
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
          const std::int64_t lx = 4 * (a[i][0] + b[j][0]), ly = 4 * (a[i][1] + b[j][1]);
          if (X >= lx && X <= lx + 8 && Y >= ly && Y <= ly + 8) return true;
        }
      return false;
    };
    auto in_cells = [&](std::int64_t X, std::int64_t Y) {
      for (std::size_t k = 0; k < s.size(); ++k) {
        const std::int64_t lx = 4 * s[k][0], ly = 4 * s[k][1];
        if (X >= lx && X <= lx + 4 && Y >= ly && Y <= ly + 4) return true;
      }
      return false;
    };
    for (std::int64_t X = 0; X <= 8 * n; ++X)
      for (std::int64_t Y = 0; Y <= 8 * n; ++Y) ASSERT_EQ(in_sum(X, Y), in_cells(X, Y));
  }
}

}  // namespace
}  // namespace fullproj
