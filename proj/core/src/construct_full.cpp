#include "fullproj/construct.hpp"
#include "fullproj/sampling.hpp"
#include "fullproj/trace.hpp"

namespace fullproj {

namespace {

constexpr std::size_t kSampledLines = 200;

// Lines meeting the closed square but not its interior contain an edge or
// touch only a corner; the four corner cells meet all of them.
bool boundary_covered(const CellSet& k) {
  const std::int64_t top = k.n() - 1;
  for (std::int64_t cx : {std::int64_t{0}, top})
    for (std::int64_t cy : {std::int64_t{0}, top})
      if (!k.contains(IntVector{cx, cy})) return false;
  return true;
}

}  // namespace

ConstructionState step_full(const ConstructionState& state, std::int64_t a_next, std::uint64_t seed,
                            const IntVector& target, int retry_cap) {
  constexpr int d = 2, k = 1;
  if (state.d != d) throw Error("full step is verified for d = 2, k = 1 only");
  if (a_next <= 0 || a_next % (20 * state.a) != 0) throw Error("a_next must be a multiple of 20 a_n");
  const std::int64_t a = state.a, r = a_next / a;
  const IntVector u = target.empty() ? IntVector(d, 0) : target;
  if (u.size() != d || u[0] < 0 || u[1] < 0 || u[0] >= a || u[1] >= a) throw Error("target cell outside the grid");
  // C_{n+1} = (u + 1/4) a_{n+1} / a_n.
  const std::int64_t g[2] = {u[0] * r + r / 4, u[1] * r + r / 4};

  const std::size_t side = static_cast<std::size_t>(a_next);
  enum : char { kNone = 0, kS = 1, kT = 2 };
  std::vector<char> kind(side * side, kNone);
  std::vector<std::int64_t> s_cells, t_cells;
  for (std::size_t i = 0; i < state.cells.size(); ++i)
    for (std::int64_t p = 0; p < r; ++p)
      for (std::int64_t q = 0; q < r; ++q) {
        const std::int64_t cx = state.cells[i][0] * r + p, cy = state.cells[i][1] * r + q;
        int outer = 0, middle = 0;
        for (std::int64_t t : {cx, cy}) {
          const int b = band_of(t, r);
          outer += b == 0 || b == 19;
          middle += b >= 9 && b <= 12;
        }
        char& slot = kind[static_cast<std::size_t>(cx) * side + static_cast<std::size_t>(cy)];
        if (outer >= k + 1) {
          slot = kS;
          s_cells.insert(s_cells.end(), {cx, cy});
        } else if (middle <= k) {
          slot = kT;
          t_cells.insert(t_cells.end(), {cx, cy});
        }
      }
  auto at = [&](std::int64_t x, std::int64_t y) -> char {
    if (x < 0 || y < 0 || x >= a_next || y >= a_next) return kNone;
    return kind[static_cast<std::size_t>(x) * side + static_cast<std::size_t>(y)];
  };
  // C' with (C + C')/2 meeting int C_{n+1}: c + c' in 2g + {-1, 0, 1} per axis.
  auto candidates = [&](std::int64_t cx, std::int64_t cy) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) out.emplace_back(2 * g[0] + dx - cx, 2 * g[1] + dy - cy);
    return out;
  };

  StepRecord rec;
  rec.kind = "full";
  rec.a = a_next;
  rec.seed = seed;
  rec.target = IntVector{g[0], g[1]};
  rec.s_cells = s_cells.size() / 2;
  rec.t_cells = t_cells.size() / 2;
  rec.bound_log10 = full_failure_bound_log10(d, a, a_next);

  // Separation of S from T, over every S-T pair.
  for (std::size_t i = 0; i < t_cells.size(); i += 2) {
    std::size_t partners = 0;
    for (const auto& [ox, oy] : candidates(t_cells[i], t_cells[i + 1])) {
      if (at(ox, oy) == kS) throw Error("internal: S and T cells not separated");
      partners += at(ox, oy) == kT;
    }
    rec.max_partners = std::max(rec.max_partners, partners);
  }
  rec.separated = true;

  for (int attempt = 1; attempt <= retry_cap; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<char> black(side * side, 0);
    for (std::size_t i = 0; i < t_cells.size(); i += 2)
      black[static_cast<std::size_t>(t_cells[i]) * side + static_cast<std::size_t>(t_cells[i + 1])] = rng.coin();
    std::vector<char> chosen(side * side, 0);
    std::vector<IntVector> cells;
    for (std::size_t i = 0; i < s_cells.size(); i += 2) {
      chosen[static_cast<std::size_t>(s_cells[i]) * side + static_cast<std::size_t>(s_cells[i + 1])] = 1;
      cells.push_back({s_cells[i], s_cells[i + 1]});
    }
    for (std::size_t i = 0; i < t_cells.size(); i += 2) {
      const std::int64_t cx = t_cells[i], cy = t_cells[i + 1];
      if (!black[static_cast<std::size_t>(cx) * side + static_cast<std::size_t>(cy)]) continue;
      bool clash = false;
      for (const auto& [ox, oy] : candidates(cx, cy))
        clash = clash || (at(ox, oy) == kT && black[static_cast<std::size_t>(ox) * side + static_cast<std::size_t>(oy)]);
      if (clash) continue;
      chosen[static_cast<std::size_t>(cx) * side + static_cast<std::size_t>(cy)] = 1;
      cells.push_back({cx, cy});
    }
    // Every selected pair: (C + C')/2 misses int C_{n+1}.
    for (const auto& c : cells)
      for (const auto& [ox, oy] : candidates(c[0], c[1]))
        if (at(ox, oy) != kNone && chosen[static_cast<std::size_t>(ox) * side + static_cast<std::size_t>(oy)])
          throw Error("internal: selected pair meets the target cell");
    CellSet next(d, a_next, cells);

    if (!boundary_covered(next) || find_avoiding_line(next)) continue;
    Rng lines(derive_seed(seed, 1000003 + static_cast<std::uint64_t>(attempt)));
    bool sampled = true;
    for (std::size_t s = 0; s < kSampledLines && sampled; ++s) {
      const Trace t = compute_trace(random_line_through_cube(lines, d, a_next), a_next);
      bool hit = false;
      for (std::size_t i = 0; i < t.cells().size() && !hit; ++i) hit = next.contains(t.cells()[i]);
      sampled = hit;
    }
    if (!sampled) throw Error("internal: sampled line missed a certified set");

    bool nested = true;
    for (const auto& c : cells) nested = nested && state.cells.contains(IntVector{c[0] / r, c[1] / r});
    rec.attempts = attempt;
    rec.cells = next.size();
    rec.nested = nested;
    rec.avoids = true;
    rec.covers = true;
    ConstructionState out{d, state.stage + 1, a_next, std::move(next), state.history};
    out.history.push_back(rec);
    return out;
  }
  throw RetryCapExceeded("retry cap exceeded: " + std::to_string(retry_cap) +
                             " colorings left a line meeting the square but missing K (failure-bound log10 " +
                             std::to_string(rec.bound_log10) + ")",
                         retry_cap, rec.bound_log10);
}

}  // namespace fullproj
