// Monotone cell corridors in slope-intercept space.
//
// In a frame where the line is y = a x + b with 0 <= a <= 1 (grid units),
// a line avoiding every grid point enters at the left or bottom side and
// then moves right or up through one cell at a time. Each move is a closed
// half-plane in (a, b); a corridor is realized by a generic line exactly
// when the accumulated polygon has positive area.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "fullproj/trace.hpp"

namespace fullproj {

namespace {

using i128 = __int128;

// alpha * a + beta * b >= gamma
struct HalfPlane {
  std::int64_t alpha, beta, gamma;
};

struct Vertex {
  std::int64_t x, y, w;  // (x / w, y / w), w > 0
};

struct PolyVertex {
  Vertex v;
  HalfPlane out;  // supporting line of the edge leaving v
};

using Polygon = std::vector<PolyVertex>;

i128 side(const HalfPlane& h, const Vertex& v) {
  return static_cast<i128>(h.alpha) * v.x + static_cast<i128>(h.beta) * v.y - static_cast<i128>(h.gamma) * v.w;
}

Vertex meet(const HalfPlane& g, const HalfPlane& h) {
  std::int64_t det = g.alpha * h.beta - h.alpha * g.beta;
  std::int64_t x = g.gamma * h.beta - h.gamma * g.beta;
  std::int64_t y = g.alpha * h.gamma - h.alpha * g.gamma;
  if (det < 0) det = -det, x = -x, y = -y;
  const std::int64_t g1 = std::gcd(std::gcd(x < 0 ? -x : x, y < 0 ? -y : y), det);
  if (g1 > 1) x /= g1, y /= g1, det /= g1;
  return {x, y, det};
}

bool same(const Vertex& p, const Vertex& q) {
  return static_cast<i128>(p.x) * q.w == static_cast<i128>(q.x) * p.w &&
         static_cast<i128>(p.y) * q.w == static_cast<i128>(q.y) * p.w;
}

Polygon clip(const Polygon& poly, const HalfPlane& h) {
  Polygon out;
  const std::size_t m = poly.size();
  std::vector<int> s(m);
  for (std::size_t i = 0; i < m; ++i) {
    const i128 v = side(h, poly[i].v);
    s[i] = v > 0 ? 1 : (v < 0 ? -1 : 0);
  }
  auto emit = [&](const Vertex& v, const HalfPlane& e) {
    if (!out.empty() && same(out.back().v, v)) {
      out.back().out = e;
      return;
    }
    out.push_back({v, e});
  };
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    if (s[i] > 0) {
      emit(poly[i].v, poly[i].out);
      if (s[j] < 0) emit(meet(poly[i].out, h), h);
    } else if (s[i] == 0) {
      emit(poly[i].v, s[j] < 0 ? h : poly[i].out);
    } else if (s[j] > 0) {
      emit(meet(poly[i].out, h), poly[i].out);
    }
  }
  while (out.size() > 1 && same(out.front().v, out.back().v)) out.pop_back();
  return out;
}

i128 orient(const Vertex& p, const Vertex& q, const Vertex& r) {
  // Sign of the homogeneous determinant equals the orientation sign since
  // all w are positive.
  return static_cast<i128>(p.x) * (static_cast<i128>(q.y) * r.w - static_cast<i128>(r.y) * q.w) -
         static_cast<i128>(p.y) * (static_cast<i128>(q.x) * r.w - static_cast<i128>(r.x) * q.w) +
         static_cast<i128>(p.w) * (static_cast<i128>(q.x) * r.y - static_cast<i128>(r.x) * q.y);
}

// Interior point of a polygon with positive area, if any.
std::optional<std::pair<Rational, Rational>> interior_point(const Polygon& poly) {
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
    if (orient(poly[0].v, poly[k].v, poly[k + 1].v) == 0) continue;
    Rational a(0), b(0);
    for (const Vertex* v : {&poly[0].v, &poly[k].v, &poly[k + 1].v}) {
      a += Rational(v->x, v->w);
      b += Rational(v->y, v->w);
    }
    return std::make_pair(a / Rational(3), b / Rational(3));
  }
  return std::nullopt;
}

bool has_area(const Polygon& poly) {
  for (std::size_t k = 1; k + 1 < poly.size(); ++k)
    if (orient(poly[0].v, poly[k].v, poly[k + 1].v) != 0) return true;
  return false;
}

HalfPlane above(std::int64_t x, std::int64_t y) { return {x, 1, y}; }      // a x + b >= y
HalfPlane below(std::int64_t x, std::int64_t y) { return {-x, -1, -y}; }   // a x + b <= y

Polygon initial_polygon(std::int64_t N) {
  const HalfPlane a_min{1, 0, 0}, a_max{-1, 0, -1}, b_min{0, 1, -N}, b_max{0, -1, -N};
  return {{Vertex{0, -N, 1}, b_min}, {Vertex{1, -N, 1}, a_max}, {Vertex{1, N, 1}, b_max}, {Vertex{0, N, 1}, a_min}};
}

// Frames map original cells to the frame where the slope lies in [0, 1].
// 0: identity, 1: reflect y, 2: transpose, 3: reflect y then transpose.
std::pair<std::int64_t, std::int64_t> to_frame(int frame, std::int64_t N, std::int64_t i, std::int64_t j) {
  switch (frame) {
    case 0: return {i, j};
    case 1: return {i, N - 1 - j};
    case 2: return {j, i};
    default: return {N - 1 - j, i};
  }
}

std::pair<std::int64_t, std::int64_t> from_frame(int frame, std::int64_t N, std::int64_t i, std::int64_t j) {
  switch (frame) {
    case 0: return {i, j};
    case 1: return {i, N - 1 - j};
    case 2: return {j, i};
    default: return {j, N - 1 - i};
  }
}

// Witness y = a x + b in the frame, expressed in the original frame.
TraceFamily2D::Witness frame_witness(int frame, std::int64_t N, const Rational& a, const Rational& b) {
  Rational slope = a, offset = b;
  std::uint8_t family = 0;
  switch (frame) {
    case 0: break;
    case 1: slope = -a, offset = Rational(N) - b; break;
    case 2: family = 1; break;
    default: family = 1, slope = -a, offset = a * Rational(N) + b; break;
  }
  return TraceFamily2D::Witness{family, slope.numerator_i64(), slope.denominator_i64(), offset.numerator_i64(),
                                offset.denominator_i64()};
}

struct Corridor {
  std::int64_t N;
  int frame;
  std::vector<char> blocked;  // frame coordinates, i * N + j
  // Called with path cells (frame coordinates), word, length and polygon.
  // Returns true to stop the search.
  std::function<bool(const std::vector<std::uint32_t>&, std::uint64_t, int, const Polygon&)> on_exit;

  std::vector<std::uint32_t> path;
  std::uint64_t word = 0;
  bool stopped = false;

  void enter(std::int64_t i, std::int64_t j, const Polygon& poly, int moves) {
    if (stopped || blocked[static_cast<std::size_t>(i * N + j)]) return;
    path.push_back(static_cast<std::uint32_t>(i * N + j));
    // Exit through the right side.
    {
      Polygon next = clip(poly, below(i + 1, j + 1));
      if (has_area(next)) {
        if (i + 1 == N) {
          stopped = on_exit(path, word, moves, next);
        } else {
          enter(i + 1, j, next, moves + 1);
        }
      }
    }
    // Exit through the top side.
    if (!stopped) {
      Polygon next = clip(poly, above(i + 1, j + 1));
      if (has_area(next)) {
        if (j + 1 == N) {
          stopped = on_exit(path, word, moves, next);
        } else {
          word |= std::uint64_t{1} << moves;
          enter(i, j + 1, next, moves + 1);
          word &= ~(std::uint64_t{1} << moves);
        }
      }
    }
    path.pop_back();
  }

  void run() {
    const Polygon start = initial_polygon(N);
    for (std::int64_t j = 0; j < N && !stopped; ++j) {
      Polygon p = clip(clip(start, above(0, j)), below(0, j + 1));
      if (has_area(p)) enter(0, j, p, 0);
    }
    for (std::int64_t i = 0; i < N && !stopped; ++i) {
      Polygon p = clip(clip(start, below(i, 0)), above(i + 1, 0));
      if (has_area(p)) enter(i, 0, p, 0);
    }
  }
};

}  // namespace

std::vector<GenericPath> enumerate_generic_paths(std::int64_t n) {
  if (n < 1 || n > 32) throw Error("resolution out of range for path enumeration");
  std::vector<GenericPath> out;
  for (int frame = 0; frame < 4; ++frame) {
    Corridor c{n, frame, std::vector<char>(static_cast<std::size_t>(n * n), 0), {}, {}, 0, false};
    c.on_exit = [&](const std::vector<std::uint32_t>& cells, std::uint64_t word, int moves, const Polygon& poly) {
      GenericPath g;
      for (std::uint32_t lin : cells) {
        auto [i, j] = from_frame(frame, n, lin / n, lin % n);
        g.cells.push_back(static_cast<std::uint32_t>(i * n + j));
      }
      std::sort(g.cells.begin(), g.cells.end());
      g.word = word;
      g.length = moves;
      g.frame = frame;
      auto pt = interior_point(poly);
      g.witness = frame_witness(frame, n, pt->first, pt->second);
      out.push_back(std::move(g));
      return false;
    };
    c.run();
  }
  return out;
}

namespace {

// Lines y = (p/q) x + b (or x = (p/q) y + b when transposed) over slopes
// with small denominators. In units of 1/q a blocked cell forbids a closed
// interval of offsets; any open gap inside the range of lines meeting the
// open square gives an avoiding line. Half-integer offsets are never
// grid values, so the line found is generic.
std::optional<Line> scan_small_slopes(const CellSet& blocked, std::int64_t max_den) {
  const std::int64_t N = blocked.n();
  std::vector<std::pair<std::int64_t, std::int64_t>> spans;
  spans.reserve(blocked.size());
  for (int transposed = 0; transposed < 2; ++transposed)
    for (std::int64_t q = 1; q <= max_den; ++q)
      for (std::int64_t p = -q; p <= q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        spans.clear();
        for (std::size_t k = 0; k < blocked.size(); ++k) {
          const std::int64_t i = blocked[k][transposed ? 1 : 0], j = blocked[k][transposed ? 0 : 1];
          spans.emplace_back(q * j - std::max(p * i, p * (i + 1)), q * (j + 1) - std::min(p * i, p * (i + 1)));
        }
        std::sort(spans.begin(), spans.end());
        const std::int64_t lo = -std::max<std::int64_t>(0, p * N), hi = q * N - std::min<std::int64_t>(0, p * N);
        std::int64_t reach = lo;  // offsets <= reach are covered or outside
        std::optional<std::int64_t> gap;
        for (const auto& [a, b] : spans) {
          if (a > reach) {
            gap = reach;
            break;
          }
          reach = std::max(reach, b);
          if (reach >= hi) break;
        }
        if (!gap && reach < hi) gap = reach;
        if (!gap) continue;
        // Offset (2 * gap + 1) / (2q): strictly inside (reach, next start).
        const Rational slope(p, q), offset(2 * *gap + 1, 2 * q);
        RationalVector base{Rational(0), offset / Rational(N)}, dir{Rational(1), slope};
        if (transposed) std::swap(base[0], base[1]), std::swap(dir[0], dir[1]);
        return Line(base, dir);
      }
  return std::nullopt;
}

}  // namespace

std::optional<Line> find_avoiding_line(const CellSet& blocked) {
  if (blocked.dim() != 2) throw Error("find_avoiding_line needs d = 2");
  const std::int64_t N = blocked.n();
  if (auto quick = scan_small_slopes(blocked, 8)) {
    const Trace t = compute_trace(*quick, N);
    for (std::size_t k = 0; k < t.size(); ++k)
      if (blocked.contains(t.cells()[k])) throw Error("internal: slope scan witness meets a blocked cell");
    return quick;
  }
  for (int frame = 0; frame < 4; ++frame) {
    Corridor c{N, frame, std::vector<char>(static_cast<std::size_t>(N * N), 0), {}, {}, 0, false};
    for (std::size_t k = 0; k < blocked.size(); ++k) {
      auto [i, j] = to_frame(frame, N, blocked[k][0], blocked[k][1]);
      c.blocked[static_cast<std::size_t>(i * N + j)] = 1;
    }
    std::optional<Line> found;
    c.on_exit = [&](const std::vector<std::uint32_t>&, std::uint64_t, int, const Polygon& poly) {
      auto pt = interior_point(poly);
      found = witness_to_line(N, frame_witness(frame, N, pt->first, pt->second));
      return true;
    };
    c.run();
    if (found) {
      const Trace t = compute_trace(*found, N);
      for (std::size_t k = 0; k < t.size(); ++k)
        if (blocked.contains(t.cells()[k])) throw Error("internal: corridor witness meets a blocked cell");
      return found;
    }
  }
  return std::nullopt;
}

namespace {

// Trace of the line through grid point g with integer direction (dx, dy).
std::vector<std::uint32_t> pivot_trace(std::int64_t N, std::int64_t gx, std::int64_t gy, std::int64_t dx,
                                       std::int64_t dy) {
  std::vector<std::uint32_t> out;
  auto sign = [&](std::int64_t x, std::int64_t y) {
    const std::int64_t c = dx * (y - gy) - dy * (x - gx);
    return c > 0 ? 1 : (c < 0 ? -1 : 0);
  };
  for (std::int64_t i = 0; i < N; ++i)
    for (std::int64_t j = 0; j < N; ++j) {
      const int s0 = sign(i, j), s1 = sign(i + 1, j), s2 = sign(i, j + 1), s3 = sign(i + 1, j + 1);
      const bool all_pos = s0 > 0 && s1 > 0 && s2 > 0 && s3 > 0;
      const bool all_neg = s0 < 0 && s1 < 0 && s2 < 0 && s3 < 0;
      if (!all_pos && !all_neg) out.push_back(static_cast<std::uint32_t>(i * N + j));
    }
  return out;
}

TraceFamily2D::Witness pivot_witness(std::int64_t gx, std::int64_t gy, std::int64_t dx, std::int64_t dy) {
  const bool x_major = (dx < 0 ? -dx : dx) >= (dy < 0 ? -dy : dy);
  if (!x_major) std::swap(gx, gy), std::swap(dx, dy);
  if (dx < 0) dx = -dx, dy = -dy;
  const Rational slope(dy, dx);
  const Rational offset = Rational(gy) - slope * Rational(gx);
  return {static_cast<std::uint8_t>(x_major ? 0 : 1), slope.numerator_i64(), slope.denominator_i64(),
          offset.numerator_i64(), offset.denominator_i64()};
}

}  // namespace

TraceFamily2D enumerate_traces_2d_by_moves(std::int64_t n) {
  TraceFamily2D out(n);
  for (auto& g : enumerate_generic_paths(n)) out.add(std::move(g.cells), g.witness);

  // Lines through at least one grid point: for each grid point, the lines
  // through it at every direction to another grid point and at every
  // direction strictly between consecutive ones.
  for (std::int64_t gx = 0; gx <= n; ++gx)
    for (std::int64_t gy = 0; gy <= n; ++gy) {
      std::vector<std::pair<std::int64_t, std::int64_t>> dirs;
      for (std::int64_t x = 0; x <= n; ++x)
        for (std::int64_t y = 0; y <= n; ++y) {
          std::int64_t dx = x - gx, dy = y - gy;
          if (dx == 0 && dy == 0) continue;
          if (dy < 0 || (dy == 0 && dx < 0)) dx = -dx, dy = -dy;
          const std::int64_t g = std::gcd(dx < 0 ? -dx : dx, dy);
          dirs.emplace_back(dx / g, dy / g);
        }
      auto angle_less = [](const auto& p, const auto& q) { return p.first * q.second - p.second * q.first > 0; };
      std::sort(dirs.begin(), dirs.end(), angle_less);
      dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
      std::vector<std::pair<std::int64_t, std::int64_t>> probes(dirs);
      for (std::size_t k = 0; k < dirs.size(); ++k) {
        const auto& p = dirs[k];
        const auto q = k + 1 < dirs.size() ? dirs[k + 1] : std::make_pair(-dirs[0].first, -dirs[0].second);
        probes.emplace_back(p.first + q.first, p.second + q.second);
      }
      if (dirs.empty()) probes.emplace_back(1, 0);
      for (const auto& [dx, dy] : probes) {
        auto cells = pivot_trace(n, gx, gy, dx, dy);
        if (!cells.empty()) out.add(std::move(cells), pivot_witness(gx, gy, dx, dy));
      }
    }
  out.finalize();
  return out;
}

}  // namespace fullproj
