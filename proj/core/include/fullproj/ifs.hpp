#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fullproj/blocking.hpp"
#include "fullproj/grid.hpp"

namespace fullproj {

// Grid IFS with maps x -> (x + t) / n for distinct t in {0..n-1}^d.
class IfsSystem {
 public:
  IfsSystem(int d, std::int64_t n, std::vector<IntVector> maps);
  static IfsSystem from_pattern(const Pattern& pattern);

  int dim() const { return d_; }
  std::int64_t n() const { return n_; }
  Rational ratio() const { return Rational(1, n_); }
  const std::vector<IntVector>& maps() const { return maps_; }

 private:
  int d_;
  std::int64_t n_;
  std::vector<IntVector> maps_;
};

// Default cap on the cells materialized by iterate.
inline constexpr std::size_t kMaxIterateCells = std::size_t{1} << 24;

// K_depth at resolution n^depth; throws "depth too large" past the cap.
CellSet iterate(const IfsSystem& sys, int depth, std::size_t max_cells = kMaxIterateCells);

// A point (v + z) / n^(j-1) that lies in K_i + K_i, found by the replay.
struct LatticeCollision {
  int level = 0;  // j
  IntVector z;
  IntVector sum_cell;  // cell of K_i + K_i at resolution n^i containing it
};

// Checks with integer arithmetic that K_depth + K_depth misses
// (v + Z^2) / n^(j-1) inside [0,2]^2 for every j <= depth, where
// v = ((2p+1)/2n, (2q+1)/2n). d = 2 only.
std::optional<LatticeCollision> find_sumset_lattice_collision(const IfsSystem& sys, std::int64_t p,
                                                               std::int64_t q, int depth);
bool sumset_lattice_avoidance(const IfsSystem& sys, const AvoidanceWitness& v, int depth);

// Whether the open images of the unit cube are pairwise disjoint. The raw
// overload accepts map lists that IfsSystem would reject.
bool open_set_condition(const IfsSystem& sys);
bool open_set_condition(int d, std::int64_t n, const std::vector<IntVector>& maps);

// K x [0,1] at the same resolution.
CellSet product_lift(const CellSet& k);
// (K x {bottom layer}) plus full columns over the 2^d corner cells.
CellSet desklegs_lift(const CellSet& k);
// Maps (t, g) for g in {0..n-1}^(d-2); the attractor is K x [0,1]^(d-2).
IfsSystem selfsimilar_lift(const Pattern& pattern, int d);

struct SvgStyle {
  std::string fill = "#1f3a5f";
  std::string background = "#ffffff";
  bool frame = true;
  // One rect per vertical run instead of one per cell.
  bool merge_runs = false;
};

// d = 2 cells drawn in the unit square with y pointing up.
std::string render_svg(const CellSet& cells, const SvgStyle& style = {});

}  // namespace fullproj
