#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fullproj/grid.hpp"

namespace fullproj {

// Non-empty set of unit-cube cells met by some line.
class Trace {
 public:
  explicit Trace(CellSet cells);

  const CellSet& cells() const { return cells_; }
  int dim() const { return cells_.dim(); }
  std::int64_t n() const { return cells_.n(); }
  std::size_t size() const { return cells_.size(); }

  friend bool operator==(const Trace&, const Trace&) = default;
  friend auto operator<=>(const Trace& a, const Trace& b) { return a.cells_ <=> b.cells_; }

 private:
  CellSet cells_;
};

struct ReducedStrongTrace {
  int refax = 1;  // 1-based
  CellSet cells;

  friend bool operator==(const ReducedStrongTrace&, const ReducedStrongTrace&) = default;
};

// Closed cells of resolution n meeting the line. Throws if the line misses
// the unit cube.
Trace compute_trace(const Line& line, std::int64_t n);
Trace compute_trace(const Line& line, std::int64_t n, int d);

// Cells the line strongly intersects. Requires the line to strongly
// intersect the unit cube.
Trace strong_trace(const Line& line, std::int64_t n);

// Coarse cells whose fine cells (resolution 4dn) on the line show at least
// four distinct projections onto the reference axis.
ReducedStrongTrace reduced_strong_trace(const Line& line, std::int64_t n);

// Largest number of distinct values pr_r takes on the cells, over r.
std::size_t max_distinct_projection(const CellSet& cells);

std::int64_t euler_totient(std::int64_t i);
std::int64_t count_balanced_words(int m);
std::int64_t balanced_brute(int m);
// Words as bit masks (bit j set means letter j is U).
bool is_balanced(std::uint64_t word, int m);

// A set of planar traces at resolution n in canonical order, stored as
// linear cell indices t1 * n + t2.
class TraceFamily2D {
 public:
  struct Witness {
    // Line in grid units: family 0 is y = (p/q) x + num/den, family 1 is
    // x = (p/q) y + num/den, both scaled by 1/n into the unit square.
    std::uint8_t family = 0;
    std::int64_t p = 0, q = 1, num = 0, den = 1;
  };

  TraceFamily2D() = default;
  explicit TraceFamily2D(std::int64_t n) : n_(n) {}

  std::int64_t n() const { return n_; }
  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const std::uint32_t> cells(std::size_t i) const {
    return {cells_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  Trace trace(std::size_t i) const;
  Line witness_line(std::size_t i) const;
  const Witness& witness(std::size_t i) const { return witnesses_[i]; }

  bool contains(const Trace& t) const;
  std::optional<std::size_t> find(std::span<const std::uint32_t> linear) const;

  // Adds a trace; finalize() sorts and deduplicates.
  void add(std::vector<std::uint32_t> linear, const Witness& w);
  void finalize();

  std::string to_json() const;

 private:
  std::int64_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> cells_;
  std::vector<Witness> witnesses_;
};

Line witness_to_line(std::int64_t n, const TraceFamily2D::Witness& w);

// All traces lt_n(L) of lines meeting the unit square, via an exact sweep
// of the dual line arrangement.
TraceFamily2D enumerate_traces_2d(std::int64_t n);

// Independent construction: monotone cell paths with exact feasibility in
// slope-intercept space, lines through pairs of grid points, and lines
// pivoting about single grid points.
TraceFamily2D enumerate_traces_2d_by_moves(std::int64_t n);

// Exact range of the reduced strong trace map over lines meeting the unit
// square, keyed by (refax, cells).
std::vector<ReducedStrongTrace> reduced_trace_range_2d(std::int64_t n);

// Generic line meeting the open unit square and missing every closed cell
// of `blocked`, or nothing if none exists. d = 2.
std::optional<Line> find_avoiding_line(const CellSet& blocked);

// Line strongly intersecting the unit square but missing every closed cell
// of `cells`, decided exactly by a sweep. d = 2.
std::optional<Line> find_strongly_avoiding_line(const CellSet& cells);

// Line strongly intersecting the unit square but strongly intersecting no
// cell of `cells`. d = 2.
std::optional<Line> find_line_without_strong_cell(const CellSet& cells);

struct ProjectionReport {
  std::size_t pairs = 0;
  std::size_t projection_matches = 0;
  std::size_t counterexamples = 0;
  bool ok() const { return counterexamples == 0; }
};

ProjectionReport projection_determination_report(std::int64_t n, std::size_t trials, std::uint64_t seed);
bool check_projection_determination(std::int64_t n, std::size_t trials, std::uint64_t seed);

struct CoverageReport {
  bool sampled_ok = true;
  bool certificate_ok = true;
  bool certificate_ran = false;
  std::optional<Line> witness;
  bool ok() const { return sampled_ok && certificate_ok; }
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

CoverageReport strong_coverage_report(const CellSet& k, std::size_t samples, std::uint64_t seed);
bool strong_coverage_check(const CellSet& k, std::size_t samples, std::uint64_t seed = kDefaultSeed);

}  // namespace fullproj

namespace fullproj {

// Cell path of a line that avoids all grid points, with its move word
// (bit j set when the j-th move goes up) in the symmetric frame where the
// slope lies in (0, 1).
struct GenericPath {
  std::vector<std::uint32_t> cells;  // linear indices t1 * n + t2, sorted
  std::uint64_t word = 0;
  int length = 0;
  int frame = 0;
  TraceFamily2D::Witness witness;
};

std::vector<GenericPath> enumerate_generic_paths(std::int64_t n);

}  // namespace fullproj
