#include "fullproj/trace.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"

namespace fullproj {

namespace {

Rational ceil_of(const Rational& x) { return -((-x).floor()); }

// Cells of resolution n containing the point, within the unit cube.
void cells_containing(std::span<const Rational> x, std::int64_t n, std::vector<std::int64_t>& out) {
  const std::size_t d = x.size();
  std::vector<std::int64_t> lo(d), hi(d);
  const Rational rn(n);
  for (std::size_t i = 0; i < d; ++i) {
    const Rational y = x[i] * rn;
    const std::int64_t f = y.floor().numerator_i64();
    if (y.is_integer()) {
      lo[i] = std::max<std::int64_t>(f - 1, 0);
      hi[i] = std::min<std::int64_t>(f, n - 1);
    } else {
      lo[i] = hi[i] = f;
    }
    if (lo[i] > hi[i]) return;
  }
  std::vector<std::int64_t> cur(lo);
  while (true) {
    out.insert(out.end(), cur.begin(), cur.end());
    std::size_t i = 0;
    while (i < d && cur[i] == hi[i]) cur[i] = lo[i], ++i;
    if (i == d) return;
    ++cur[i];
  }
}

Box unit_box(int d) {
  return Box{RationalVector(static_cast<std::size_t>(d), Rational(0)),
             RationalVector(static_cast<std::size_t>(d), Rational(1))};
}

}  // namespace

Trace::Trace(CellSet cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw Error("trace must be non-empty");
  if (!cells_.all_in_unit_cube()) throw Error("trace cells must lie in the unit cube");
}

Trace compute_trace(const Line& line, std::int64_t n) {
  if (n < 1) throw Error("resolution must be >= 1");
  const int d = line.dim();
  auto range = clip_parameters(line, unit_box(d));
  if (!range) throw Error("line misses unit cube");
  const auto& [s0, s1] = *range;

  std::vector<Rational> params{s0, s1};
  const Rational rn(n);
  for (int i = 0; i < d; ++i) {
    const Rational& v = line.dir()[static_cast<std::size_t>(i)];
    if (v.sign() == 0) continue;
    const Rational& b = line.base()[static_cast<std::size_t>(i)];
    Rational x0 = b + s0 * v, x1 = b + s1 * v;
    if (x1 < x0) std::swap(x0, x1);
    const std::int64_t m0 = ceil_of(x0 * rn).numerator_i64();
    const std::int64_t m1 = (x1 * rn).floor().numerator_i64();
    for (std::int64_t m = m0; m <= m1; ++m) params.push_back((Rational(m, n) - b) / v);
  }
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());

  std::vector<std::int64_t> flat;
  for (std::size_t k = 0; k < params.size(); ++k) {
    cells_containing(line.at(params[k]), n, flat);
    if (k + 1 < params.size()) cells_containing(line.at((params[k] + params[k + 1]) / Rational(2)), n, flat);
  }
  return Trace(CellSet::from_flat(d, n, std::move(flat)));
}

Trace compute_trace(const Line& line, std::int64_t n, int d) {
  if (line.dim() != d) throw Error("line dimension does not match d");
  return compute_trace(line, n);
}

Trace strong_trace(const Line& line, std::int64_t n) {
  if (!strongly_intersects(line, unit_box(line.dim())))
    throw Error("line does not strongly intersect unit cube");
  const Trace all = compute_trace(line, n);
  std::vector<std::int64_t> flat;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto c = all.cells()[i];
    if (strongly_intersects(line, cell_box(line.dim(), n, c))) flat.insert(flat.end(), c.begin(), c.end());
  }
  return Trace(CellSet::from_flat(line.dim(), n, std::move(flat)));
}

ReducedStrongTrace reduced_strong_trace(const Line& line, std::int64_t n) {
  const int d = line.dim();
  if (!strongly_intersects(line, unit_box(d))) throw Error("line does not strongly intersect unit cube");
  const std::int64_t scale = 4 * d;
  const Trace fine = compute_trace(line, scale * n);
  const int r = refax(line);
  std::map<IntVector, std::set<std::int64_t>> projections;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    auto c = fine.cells()[i];
    IntVector coarse(c.begin(), c.end());
    for (auto& v : coarse) v /= scale;
    projections[coarse].insert(c[static_cast<std::size_t>(r - 1)]);
  }
  std::vector<std::int64_t> flat;
  for (const auto& [coarse, values] : projections)
    if (values.size() >= 4) flat.insert(flat.end(), coarse.begin(), coarse.end());
  return ReducedStrongTrace{r, CellSet::from_flat(d, n, std::move(flat))};
}

std::size_t max_distinct_projection(const CellSet& cells) {
  std::size_t best = 0;
  for (int r = 0; r < cells.dim(); ++r) {
    std::set<std::int64_t> values;
    for (std::size_t i = 0; i < cells.size(); ++i) values.insert(cells[i][static_cast<std::size_t>(r)]);
    best = std::max(best, values.size());
  }
  return best;
}

Trace TraceFamily2D::trace(std::size_t i) const {
  std::vector<std::int64_t> flat;
  for (std::uint32_t c : cells(i)) {
    flat.push_back(c / n_);
    flat.push_back(c % n_);
  }
  return Trace(CellSet::from_flat(2, n_, std::move(flat)));
}

Line TraceFamily2D::witness_line(std::size_t i) const { return witness_to_line(n_, witnesses_[i]); }

Line witness_to_line(std::int64_t n, const TraceFamily2D::Witness& w) {
  const Rational offset = Rational(w.num, w.den) / Rational(n);
  if (w.family == 0) return Line({Rational(0), offset}, {Rational(w.q), Rational(w.p)});
  return Line({offset, Rational(0)}, {Rational(w.p), Rational(w.q)});
}

std::optional<std::size_t> TraceFamily2D::find(std::span<const std::uint32_t> linear) const {
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto c = cells(mid);
    if (std::lexicographical_compare(c.begin(), c.end(), linear.begin(), linear.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::ranges::equal(cells(lo), linear)) return lo;
  return std::nullopt;
}

bool TraceFamily2D::contains(const Trace& t) const {
  if (t.dim() != 2 || t.n() != n_) return false;
  std::vector<std::uint32_t> linear;
  for (std::size_t i = 0; i < t.size(); ++i)
    linear.push_back(static_cast<std::uint32_t>(t.cells()[i][0] * n_ + t.cells()[i][1]));
  return find(linear).has_value();
}

void TraceFamily2D::add(std::vector<std::uint32_t> linear, const Witness& w) {
  std::sort(linear.begin(), linear.end());
  if (offsets_.empty()) offsets_.push_back(0);
  cells_.insert(cells_.end(), linear.begin(), linear.end());
  offsets_.push_back(cells_.size());
  witnesses_.push_back(w);
}

void TraceFamily2D::finalize() {
  const std::size_t count = size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto x = cells(a), y = cells(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> flat;
  std::vector<Witness> witnesses;
  for (std::size_t k = 0; k < count; ++k) {
    auto c = cells(order[k]);
    if (k > 0 && std::ranges::equal(c, cells(order[k - 1]))) continue;
    flat.insert(flat.end(), c.begin(), c.end());
    offsets.push_back(flat.size());
    witnesses.push_back(witnesses_[order[k]]);
  }
  offsets_ = std::move(offsets);
  cells_ = std::move(flat);
  witnesses_ = std::move(witnesses);
}

std::string TraceFamily2D::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < size(); ++i) {
    nlohmann::json t = nlohmann::json::array();
    for (std::uint32_t c : cells(i)) t.push_back({c / n_, c % n_});
    out.push_back(std::move(t));
  }
  return out.dump();
}

}  // namespace fullproj
