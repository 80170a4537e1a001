#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fullproj/blocking.hpp"

namespace fullproj {

// Hitting set of every trace, adding the cell that meets the most uncovered
// traces (lowest cell on ties).
Pattern greedy_blocking_cover(std::int64_t n);
Pattern greedy_blocking_cover(const TraceFamily2D& family);

// Half-grid avoidance candidates ordered by distance of v to (29/20, 31/20)
// then lexicographically.
std::vector<std::pair<std::int64_t, std::int64_t>> avoidance_candidates(std::int64_t n);

struct LocalSearchResult {
  Pattern pattern;
  bool feasible = false;  // blocking and avoiding for `vector`
  std::optional<std::pair<std::int64_t, std::int64_t>> vector;
  std::uint64_t moves = 0;
};

// Randomized repair-and-shrink search over add/remove/swap moves. `budget`
// bounds the total number of moves. The result always blocks.
LocalSearchResult local_search_run(const Pattern& start, std::uint64_t budget, std::uint64_t seed);
LocalSearchResult local_search_run(const Pattern& start, const TraceFamily2D& family, std::uint64_t budget,
                                   std::uint64_t seed);
Pattern local_search(const Pattern& start, std::uint64_t budget, std::uint64_t seed);

struct SearchFailure {
  std::string reason;     // which certificate failed, or the infeasibility proof
  Pattern best;           // best blocking pattern found
  bool proven_infeasible = false;
};

using SearchOutcome = std::variant<Certificate, SearchFailure>;

SearchOutcome search_pattern(std::int64_t n, std::uint64_t budget, std::uint64_t seed);

// All inclusion-minimal patterns that block and admit an avoidance vector.
// Enumerates all 2^(n^2) subsets, so n <= 3.
std::vector<Pattern> exhaustive_search(std::int64_t n);

}  // namespace fullproj
