#include "fullproj/grid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fullproj {

bool Cell::in_unit_cube() const {
  return std::all_of(t.begin(), t.end(), [&](std::int64_t v) { return v >= 0 && v < n; });
}

bool Box::contains(std::span<const Rational> p) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  return true;
}

Line::Line(RationalVector base, RationalVector dir) : base_(std::move(base)), dir_(std::move(dir)) {
  if (base_.empty() || base_.size() != dir_.size()) throw Error("line base/direction dimension mismatch");
  if (std::all_of(dir_.begin(), dir_.end(), [](const Rational& r) { return r.sign() == 0; }))
    throw Error("line direction must be nonzero");
}

Line Line::through(RationalVector p, RationalVector q) {
  RationalVector dir(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) dir[i] = q[i] - p[i];
  return Line(std::move(p), std::move(dir));
}

RationalVector Line::at(const Rational& s) const {
  RationalVector p(base_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = base_[i] + s * dir_[i];
  return p;
}

Line Line::canonical() const {
  std::size_t k = 0;
  while (dir_[k].sign() == 0) ++k;
  RationalVector dir(dir_.size()), base(base_.size());
  const Rational scale = dir_[k];
  for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = dir_[i] / scale;
  const Rational shift = base_[k];
  for (std::size_t i = 0; i < base.size(); ++i) base[i] = base_[i] - shift * dir[i];
  return Line(std::move(base), std::move(dir));
}

bool Line::same_points(const Line& other) const {
  return dim() == other.dim() && canonical() == other.canonical();
}

std::string to_string(const Line& line) {
  std::ostringstream os;
  os << "base=(";
  for (std::size_t i = 0; i < line.base().size(); ++i) os << (i ? "," : "") << line.base()[i];
  os << ") dir=(";
  for (std::size_t i = 0; i < line.dir().size(); ++i) os << (i ? "," : "") << line.dir()[i];
  os << ")";
  return os.str();
}

CellSet::CellSet(int d, std::int64_t n, bool sumset_space) : d_(d), n_(n), sumset_space_(sumset_space) {
  if (d < 1) throw Error("dimension must be >= 1");
  if (n < 1) throw Error("resolution must be >= 1");
}

CellSet::CellSet(int d, std::int64_t n, const std::vector<IntVector>& cells, bool sumset_space)
    : CellSet(d, n, sumset_space) {
  flat_.reserve(cells.size() * static_cast<std::size_t>(d));
  for (const auto& c : cells) {
    if (static_cast<int>(c.size()) != d) throw Error("cell dimension mismatch");
    flat_.insert(flat_.end(), c.begin(), c.end());
  }
  canonicalize();
}

CellSet CellSet::from_flat(int d, std::int64_t n, std::vector<std::int64_t> flat, bool sumset_space) {
  CellSet s(d, n, sumset_space);
  if (flat.size() % static_cast<std::size_t>(d) != 0) throw Error("flat cell data not a multiple of d");
  s.flat_ = std::move(flat);
  s.canonicalize();
  return s;
}

void CellSet::canonicalize() {
  const std::size_t d = static_cast<std::size_t>(d_);
  const std::size_t count = flat_.size() / d;
  if (!sumset_space_) {
    for (std::int64_t v : flat_)
      if (v < 0 || v >= n_) throw Error("cell outside the unit cube in a non-sumset cell set");
  }
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat_.begin() + a * d, flat_.begin() + (a + 1) * d,
                                        flat_.begin() + b * d, flat_.begin() + (b + 1) * d);
  };
  bool sorted = true;
  for (std::size_t i = 1; i < count && sorted; ++i) sorted = less(i - 1, i);
  if (sorted) return;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), less);
  std::vector<std::int64_t> out;
  out.reserve(flat_.size());
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = order[k];
    if (!out.empty() && std::equal(out.end() - static_cast<std::ptrdiff_t>(d), out.end(), flat_.begin() + i * d))
      continue;
    out.insert(out.end(), flat_.begin() + i * d, flat_.begin() + (i + 1) * d);
  }
  flat_ = std::move(out);
}

Cell CellSet::cell(std::size_t i) const {
  auto s = (*this)[i];
  return Cell{n_, IntVector(s.begin(), s.end())};
}

std::vector<IntVector> CellSet::cells() const {
  std::vector<IntVector> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto s = (*this)[i];
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

bool CellSet::contains(std::span<const std::int64_t> t) const {
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto c = (*this)[mid];
    if (std::lexicographical_compare(c.begin(), c.end(), t.begin(), t.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < size() && std::equal(t.begin(), t.end(), (*this)[lo].begin());
}

bool CellSet::all_in_unit_cube() const {
  return std::all_of(flat_.begin(), flat_.end(), [&](std::int64_t v) { return v >= 0 && v < n_; });
}

std::strong_ordering operator<=>(const CellSet& a, const CellSet& b) {
  if (auto c = a.d_ <=> b.d_; c != 0) return c;
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.flat_.begin(), a.flat_.end(), b.flat_.begin(), b.flat_.end());
}

Box cell_box(int d, std::int64_t n, std::span<const std::int64_t> t) {
  Box b;
  b.lo.reserve(static_cast<std::size_t>(d));
  b.hi.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    b.lo.emplace_back(t[static_cast<std::size_t>(i)], n);
    b.hi.emplace_back(t[static_cast<std::size_t>(i)] + 1, n);
  }
  return b;
}

Box cell_box(const Cell& cell) { return cell_box(cell.dim(), cell.n, cell.t); }

std::optional<std::pair<Rational, Rational>> clip_parameters(const Line& line, const Box& box) {
  const auto& p = line.base();
  const auto& v = line.dir();
  std::optional<Rational> lo, hi;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (v[i].sign() == 0) {
      if (p[i] < box.lo[i] || p[i] > box.hi[i]) return std::nullopt;
      continue;
    }
    Rational a = (box.lo[i] - p[i]) / v[i];
    Rational b = (box.hi[i] - p[i]) / v[i];
    if (b < a) std::swap(a, b);
    if (!lo || *lo < a) lo = std::move(a);
    if (!hi || b < *hi) hi = std::move(b);
    if (*hi < *lo) return std::nullopt;
  }
  // dir is nonzero, so at least one coordinate bounded the parameter.
  return std::make_pair(*lo, *hi);
}

std::optional<Segment> line_box_intersection(const Line& line, const Box& box) {
  auto range = clip_parameters(line, box);
  if (!range) return std::nullopt;
  return Segment{line.at(range->first), line.at(range->second)};
}

std::optional<Segment> line_cell_intersection(const Line& line, const Cell& cell) {
  if (line.dim() != cell.dim()) throw Error("line/cell dimension mismatch");
  return line_box_intersection(line, cell_box(cell));
}

Rational diam_inf(const Segment& seg) {
  Rational best(0);
  for (std::size_t i = 0; i < seg.a.size(); ++i) best = max(best, (seg.a[i] - seg.b[i]).abs());
  return best;
}

bool strongly_intersects(const Line& line, const Box& box) {
  auto seg = line_box_intersection(line, box);
  if (!seg) return false;
  Rational side(0);
  for (std::size_t i = 0; i < box.lo.size(); ++i) side = max(side, box.hi[i] - box.lo[i]);
  return diam_inf(*seg) * Rational(2 * box.dim()) >= side;
}

bool strongly_intersects(const Line& line, const Cell& cell) {
  if (line.dim() != cell.dim()) throw Error("line/cell dimension mismatch");
  return strongly_intersects(line, cell_box(cell));
}

int refax(const Line& line) {
  int best = 0;
  Rational best_abs = line.dir()[0].abs();
  for (int i = 1; i < line.dim(); ++i) {
    Rational a = line.dir()[static_cast<std::size_t>(i)].abs();
    if (best_abs < a) {
      best_abs = std::move(a);
      best = i;
    }
  }
  return best + 1;
}

CellSet minkowski_sum(const CellSet& a, const CellSet& b) {
  if (a.n() != b.n() || a.dim() != b.dim()) throw Error("resolution mismatch in minkowski_sum");
  const int d = a.dim();
  const std::size_t ud = static_cast<std::size_t>(d);
  std::vector<std::int64_t> sums;
  sums.reserve(a.size() * b.size() * ud);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      for (std::size_t k = 0; k < ud; ++k) sums.push_back(a[i][k] + b[j][k]);
  CellSet base = CellSet::from_flat(d, a.n(), std::move(sums), true);
  std::vector<std::int64_t> out;
  out.reserve(base.size() * ud << d);
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask)
      for (std::size_t k = 0; k < ud; ++k) out.push_back(base[i][k] + ((mask >> k) & 1u));
  return CellSet::from_flat(d, a.n(), std::move(out), true);
}

Cell unit_cell(int d) { return Cell{1, IntVector(static_cast<std::size_t>(d), 0)}; }

}  // namespace fullproj
