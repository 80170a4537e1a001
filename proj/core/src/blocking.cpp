#include "fullproj/blocking.hpp"

#include <algorithm>
#include <sstream>

namespace fullproj {

Pattern::Pattern(std::int64_t n, const std::vector<IntVector>& cells, int d) : cells_(d, n, cells) {}

Pattern::Pattern(CellSet cells) : cells_(std::move(cells)) {
  if (!cells_.all_in_unit_cube()) throw Error("pattern cells must lie in the grid");
}

bool Pattern::contains(std::int64_t t1, std::int64_t t2) const {
  const std::int64_t c[2] = {t1, t2};
  return cells_.contains(std::span<const std::int64_t>(c, 2));
}

std::string Pattern::to_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    auto c = cells_[i];
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k];
    os << "\n";
  }
  return os.str();
}

Pattern Pattern::from_text(std::int64_t n, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<IntVector> cells;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    IntVector c;
    std::int64_t v;
    while (ls >> v) c.push_back(v);
    if (c.empty()) continue;
    if (!ls.eof()) throw Error("malformed pattern line: " + line);
    if (!cells.empty() && c.size() != cells.front().size()) throw Error("inconsistent pattern dimension");
    cells.push_back(std::move(c));
  }
  const int d = cells.empty() ? 2 : static_cast<int>(cells.front().size());
  return Pattern(n, cells, d);
}

namespace {

void require_planar(const Pattern& pattern) {
  if (pattern.dim() != 2) throw Error("planar certification needs d = 2");
}

std::vector<char> pattern_grid(const Pattern& pattern) {
  const std::int64_t n = pattern.n();
  std::vector<char> grid(static_cast<std::size_t>(n * n), 0);
  for (std::size_t k = 0; k < pattern.size(); ++k)
    grid[static_cast<std::size_t>(pattern.cells()[k][0] * n + pattern.cells()[k][1])] = 1;
  return grid;
}

}  // namespace

bool verify_blocking_by_traces(const Pattern& pattern, const TraceFamily2D& family) {
  require_planar(pattern);
  if (family.n() != pattern.n()) throw Error("trace family resolution mismatch");
  const auto grid = pattern_grid(pattern);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto cells = family.cells(i);
    if (std::none_of(cells.begin(), cells.end(), [&](std::uint32_t c) { return grid[c] != 0; })) return false;
  }
  return true;
}

bool verify_blocking_by_traces(const Pattern& pattern) {
  require_planar(pattern);
  return verify_blocking_by_traces(pattern, enumerate_traces_2d(pattern.n()));
}

namespace {

// Line a X + b Y = c in grid units; c carries the perturbation.
struct IntLine {
  std::int64_t a, b, c;
  std::int64_t value(std::int64_t x, std::int64_t y) const { return a * x + b * y - c; }
};

Line to_line(const IntLine& l, std::int64_t n) {
  const Rational rn(n);
  if (l.b != 0) return Line({Rational(0), Rational(l.c, l.b) / rn}, {Rational(l.b), Rational(-l.a)});
  return Line({Rational(l.c, l.a) / rn, Rational(0)}, {Rational(l.b), Rational(-l.a)});
}

}  // namespace

std::optional<Line> find_gap_by_tangents(const Pattern& pattern) {
  require_planar(pattern);
  const std::int64_t n = pattern.n();
  const auto grid = pattern_grid(pattern);

  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  {
    std::vector<char> seen(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
    auto add = [&](std::int64_t x, std::int64_t y) {
      auto& s = seen[static_cast<std::size_t>(x * (n + 1) + y)];
      if (!s) s = 1, pts.emplace_back(x, y);
    };
    add(0, 0), add(n, 0), add(0, n), add(n, n);
    for (std::size_t k = 0; k < pattern.size(); ++k) {
      const std::int64_t i = pattern.cells()[k][0], j = pattern.cells()[k][1];
      add(i, j), add(i + 1, j), add(i, j + 1), add(i + 1, j + 1);
    }
  }

  auto strictly_one_side = [](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return (a > 0 && b > 0 && c > 0 && d > 0) || (a < 0 && b < 0 && c < 0 && d < 0);
  };
  auto avoids = [&](const IntLine& l) {
    if (strictly_one_side(l.value(0, 0), l.value(n, 0), l.value(0, n), l.value(n, n))) return false;
    for (std::size_t k = 0; k < pattern.size(); ++k) {
      const std::int64_t i = pattern.cells()[k][0], j = pattern.cells()[k][1];
      if (!strictly_one_side(l.value(i, j), l.value(i + 1, j), l.value(i, j + 1), l.value(i + 1, j + 1))) return false;
    }
    return true;
  };

  // Perturbation scale: a shift or rotation changes values at grid points
  // by at most 4n^2, far below the 64n^2 gap to any point off the line.
  const std::int64_t big = 64 * n * n;
  for (std::size_t s = 0; s < pts.size(); ++s)
    for (std::size_t t = s + 1; t < pts.size(); ++t) {
      const auto [x1, y1] = pts[s];
      const auto [x2, y2] = pts[t];
      const std::int64_t dx = x2 - x1, dy = y2 - y1;
      const std::int64_t nx = -dy, ny = dx;
      const std::int64_t norm2 = dx * dx + dy * dy;
      std::vector<IntLine> candidates;
      // Exact line: -dy X + dx Y = dx y1 - dy x1.
      candidates.push_back({-dy, dx, dx * y1 - dy * x1});
      for (std::int64_t sign : {-1, 1}) {
        // Shift by sign * norm2 / big along the value.
        candidates.push_back({-big * dy, big * dx, big * (dx * y1 - dy * x1) + sign * norm2});
        // Rotate about the midpoint: direction e = big*d + sign*nrm through
        // (P / 2), written with doubled coordinates.
        const std::int64_t ex = big * dx + sign * nx, ey = big * dy + sign * ny;
        const std::int64_t px = x1 + x2, py = y1 + y2;
        candidates.push_back({-2 * ey, 2 * ex, ex * py - ey * px});
      }
      for (const auto& l : candidates) {
        if (!avoids(l)) continue;
        Line line = to_line(l, n);
        const Trace trace = compute_trace(line, n);
        for (std::size_t k = 0; k < trace.size(); ++k)
          if (grid[static_cast<std::size_t>(trace.cells()[k][0] * n + trace.cells()[k][1])])
            throw Error("internal: tangent witness meets the pattern");
        return line;
      }
    }
  return std::nullopt;
}

bool verify_blocking_by_tangents(const Pattern& pattern) { return !find_gap_by_tangents(pattern).has_value(); }

bool avoidance_holds(const Pattern& pattern, std::int64_t p, std::int64_t q) {
  require_planar(pattern);
  const std::int64_t n = pattern.n();
  if (p < n || p >= 2 * n || q < n || q >= 2 * n) throw Error("avoidance index outside [n, 2n-1]");
  const auto grid = pattern_grid(pattern);
  // x is in T+ iff x - e is in T for some e in {0, n}^2.
  auto in_plus = [&](std::int64_t x, std::int64_t y) {
    for (std::int64_t ex : {std::int64_t{0}, n})
      for (std::int64_t ey : {std::int64_t{0}, n}) {
        const std::int64_t a = x - ex, b = y - ey;
        if (a >= 0 && a < n && b >= 0 && b < n && grid[static_cast<std::size_t>(a * n + b)]) return true;
      }
    return false;
  };
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const std::int64_t i = pattern.cells()[k][0], j = pattern.cells()[k][1];
    for (std::int64_t cx : {p - 1, p})
      for (std::int64_t cy : {q - 1, q})
        if (in_plus(cx - i, cy - j)) return false;
  }
  return true;
}

AvoidanceWitness avoidance_witness(const Pattern& pattern, std::int64_t p, std::int64_t q) {
  const std::int64_t n = pattern.n();
  AvoidanceWitness w{p, q, {}, {}};
  std::vector<std::int64_t> plus, minus;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const std::int64_t i = pattern.cells()[k][0], j = pattern.cells()[k][1];
    for (std::int64_t ex : {std::int64_t{0}, n})
      for (std::int64_t ey : {std::int64_t{0}, n}) plus.insert(plus.end(), {i + ex, j + ey});
    for (std::int64_t cx : {p - 1, p})
      for (std::int64_t cy : {q - 1, q}) minus.insert(minus.end(), {cx - i, cy - j});
  }
  w.t_plus = CellSet::from_flat(2, n, std::move(plus), true).cells();
  w.t_minus = CellSet::from_flat(2, n, std::move(minus), true).cells();
  return w;
}

std::optional<AvoidanceWitness> verify_sumset_avoidance(const Pattern& pattern) {
  require_planar(pattern);
  const std::int64_t n = pattern.n();
  for (std::int64_t p = n; p < 2 * n; ++p)
    for (std::int64_t q = n; q < 2 * n; ++q)
      if (avoidance_holds(pattern, p, q)) return avoidance_witness(pattern, p, q);
  return std::nullopt;
}

Certificate make_certificate(const Pattern& pattern, const TraceFamily2D& family,
                             std::optional<std::pair<std::int64_t, std::int64_t>> prefer) {
  require_planar(pattern);
  BlockingVerdicts verdicts;
  verdicts.trace_count = family.size();
  verdicts.traces = verify_blocking_by_traces(pattern, family);
  const auto gap = find_gap_by_tangents(pattern);
  verdicts.tangents = !gap.has_value();
  if (!verdicts.traces || !verdicts.tangents) {
    std::optional<Line> witness = gap;
    if (!witness) witness = find_avoiding_line(pattern.cells());
    throw CertificateError("blocking failed (witness line attached)", witness);
  }
  std::optional<AvoidanceWitness> avoidance;
  if (prefer && prefer->first >= pattern.n() && prefer->first < 2 * pattern.n() && prefer->second >= pattern.n() &&
      prefer->second < 2 * pattern.n() && avoidance_holds(pattern, prefer->first, prefer->second))
    avoidance = avoidance_witness(pattern, prefer->first, prefer->second);
  if (!avoidance) avoidance = verify_sumset_avoidance(pattern);
  if (!avoidance) throw CertificateError("no avoidance vector exists");
  return Certificate{pattern, verdicts, *avoidance};
}

Certificate make_certificate(const Pattern& pattern) {
  require_planar(pattern);
  return make_certificate(pattern, enumerate_traces_2d(pattern.n()));
}

}  // namespace fullproj
