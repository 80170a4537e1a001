#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fullproj/rational.hpp"

namespace fullproj {

// Thrown when an operation's documented precondition does not hold.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using IntVector = std::vector<std::int64_t>;

// The closed cube prod [t_i/n, (t_i+1)/n].
struct Cell {
  std::int64_t n = 1;
  IntVector t;

  int dim() const { return static_cast<int>(t.size()); }
  bool in_unit_cube() const;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Box {
  RationalVector lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(std::span<const Rational> p) const;
};

// Closed segment from a to b; a == b is a legal single point.
struct Segment {
  RationalVector a, b;
};

class Line {
 public:
  Line(RationalVector base, RationalVector dir);

  // Line through two distinct points.
  static Line through(RationalVector p, RationalVector q);

  const RationalVector& base() const { return base_; }
  const RationalVector& dir() const { return dir_; }
  int dim() const { return static_cast<int>(base_.size()); }

  RationalVector at(const Rational& s) const;

  // Representative with the first nonzero direction entry equal to 1 and
  // the matching base coordinate 0; equal point sets give equal forms.
  Line canonical() const;
  bool same_points(const Line& other) const;

  friend bool operator==(const Line&, const Line&) = default;

 private:
  RationalVector base_, dir_;
};

std::string to_string(const Line& line);

// Cells at a common (d, n), stored flat and sorted lexicographically.
// Cells outside the unit cube are allowed only when sumset_space is set.
class CellSet {
 public:
  CellSet(int d, std::int64_t n, bool sumset_space = false);
  CellSet(int d, std::int64_t n, const std::vector<IntVector>& cells, bool sumset_space = false);
  static CellSet from_flat(int d, std::int64_t n, std::vector<std::int64_t> flat, bool sumset_space = false);

  int dim() const { return d_; }
  std::int64_t n() const { return n_; }
  bool sumset_space() const { return sumset_space_; }
  std::size_t size() const { return d_ == 0 ? 0 : flat_.size() / static_cast<std::size_t>(d_); }
  bool empty() const { return flat_.empty(); }

  std::span<const std::int64_t> operator[](std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }
  Cell cell(std::size_t i) const;
  std::vector<IntVector> cells() const;
  const std::vector<std::int64_t>& flat() const { return flat_; }

  bool contains(std::span<const std::int64_t> t) const;
  bool all_in_unit_cube() const;

  friend bool operator==(const CellSet& a, const CellSet& b) {
    return a.d_ == b.d_ && a.n_ == b.n_ && a.flat_ == b.flat_;
  }
  friend std::strong_ordering operator<=>(const CellSet& a, const CellSet& b);

 private:
  void canonicalize();

  int d_;
  std::int64_t n_;
  bool sumset_space_;
  std::vector<std::int64_t> flat_;
};

Box cell_box(const Cell& cell);
Box cell_box(int d, std::int64_t n, std::span<const std::int64_t> t);

// Parameter interval [lo, hi] of the line inside the box, if nonempty.
std::optional<std::pair<Rational, Rational>> clip_parameters(const Line& line, const Box& box);
std::optional<Segment> line_box_intersection(const Line& line, const Box& box);
std::optional<Segment> line_cell_intersection(const Line& line, const Cell& cell);

Rational diam_inf(const Segment& seg);

bool strongly_intersects(const Line& line, const Cell& cell);
bool strongly_intersects(const Line& line, const Box& box);

// Least 1-based index maximizing |dir_i|.
int refax(const Line& line);

CellSet minkowski_sum(const CellSet& a, const CellSet& b);

// The unit cube as the single cell of resolution 1.
Cell unit_cell(int d);

}  // namespace fullproj
