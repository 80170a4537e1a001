#include <gtest/gtest.h>

#include "fullproj/search.hpp"

using namespace fullproj;

TEST(Greedy, SmallResolutions) {
  const Pattern one = greedy_blocking_cover(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one.contains(0, 0));
  for (std::int64_t n = 2; n <= 6; ++n) {
    const Pattern p = greedy_blocking_cover(n);
    EXPECT_TRUE(verify_blocking_by_traces(p)) << n;
    EXPECT_TRUE(verify_blocking_by_tangents(p)) << n;
    if (n == 2) EXPECT_LE(p.size(), 4u);
  }
}

TEST(Candidates, PreferredVectorFirst) {
  const auto c = avoidance_candidates(10);
  ASSERT_EQ(c.size(), 100u);
  EXPECT_EQ(c.front(), std::make_pair(std::int64_t{14}, std::int64_t{15}));
}

TEST(Exhaustive, SmallResolutionsAreInfeasible) {
  EXPECT_TRUE(exhaustive_search(1).empty());
  EXPECT_TRUE(exhaustive_search(2).empty());
  // Frozen regression value.
  EXPECT_TRUE(exhaustive_search(3).empty());
  EXPECT_THROW(exhaustive_search(4), Error);
}

TEST(SearchPattern, ReportsProofOfInfeasibility) {
  const auto out = search_pattern(2, 1000, 1);
  ASSERT_TRUE(std::holds_alternative<SearchFailure>(out));
  const auto& f = std::get<SearchFailure>(out);
  EXPECT_TRUE(f.proven_infeasible);
  EXPECT_TRUE(verify_blocking_by_traces(f.best));
}

TEST(LocalSearch, InfeasibleResolutionStillBlocks) {
  const auto family = enumerate_traces_2d(5);
  const auto r = local_search_run(greedy_blocking_cover(family), family, 20000, 3);
  EXPECT_FALSE(r.feasible);
  EXPECT_TRUE(verify_blocking_by_traces(r.pattern, family));
}

TEST(SearchPattern, ResolutionTenSucceedsAndReverifies) {
  const auto family = enumerate_traces_2d(10);
  const auto r1 = local_search_run(greedy_blocking_cover(family), family, 1000000, 1);
  ASSERT_TRUE(r1.feasible);
  const auto r2 = local_search_run(greedy_blocking_cover(family), family, 1000000, 1);
  EXPECT_EQ(r1.pattern, r2.pattern);
  EXPECT_TRUE(verify_blocking_by_traces(r1.pattern, family));
  EXPECT_TRUE(verify_blocking_by_tangents(r1.pattern));
  ASSERT_TRUE(r1.vector);
  EXPECT_TRUE(avoidance_holds(r1.pattern, r1.vector->first, r1.vector->second));

  // Already feasible start never grows.
  const auto r3 = local_search_run(r1.pattern, family, 10000, 9);
  EXPECT_TRUE(r3.feasible);
  EXPECT_LE(r3.pattern.size(), r1.pattern.size());
  EXPECT_TRUE(verify_blocking_by_traces(r3.pattern, family));
}
