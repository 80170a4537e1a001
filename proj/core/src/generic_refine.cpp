#include <set>

#include "fullproj/construct.hpp"

namespace fullproj {

CellSet generic_refine(const CellSet& k, const Pattern& pattern) {
  if (k.empty()) throw Error("empty set");
  if (k.dim() != pattern.dim()) throw Error("dimension mismatch");
  const int d = k.dim();
  const std::int64_t n = pattern.n(), m = k.n();

  // Resolution-n cells meeting the closed box union of k, axis by axis:
  // [h, h+1]/n meets [c, c+1]/m iff h m <= (c+1) n and c n <= (h+1) m.
  std::set<IntVector> hits;
  for (std::size_t i = 0; i < k.size(); ++i) {
    std::vector<std::pair<std::int64_t, std::int64_t>> range(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
      const std::int64_t c = k[i][a];
      std::int64_t lo = (c * n) / m - 1, hi = ((c + 1) * n) / m;
      while (lo < 0 || (lo + 1) * m < c * n) ++lo;
      hi = std::min(hi, n - 1);
      range[static_cast<std::size_t>(a)] = {lo, hi};
    }
    IntVector h(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) h[static_cast<std::size_t>(a)] = range[static_cast<std::size_t>(a)].first;
    while (true) {
      hits.insert(h);
      int a = d - 1;
      while (a >= 0 && h[static_cast<std::size_t>(a)] == range[static_cast<std::size_t>(a)].second) {
        h[static_cast<std::size_t>(a)] = range[static_cast<std::size_t>(a)].first;
        --a;
      }
      if (a < 0) break;
      ++h[static_cast<std::size_t>(a)];
    }
  }

  std::vector<std::int64_t> flat;
  flat.reserve(hits.size() * pattern.size() * static_cast<std::size_t>(d));
  for (const auto& h : hits)
    for (std::size_t t = 0; t < pattern.size(); ++t)
      for (int a = 0; a < d; ++a) flat.push_back(h[static_cast<std::size_t>(a)] * n + pattern.cells()[t][a]);
  CellSet out = CellSet::from_flat(d, n * n, std::move(flat));

  // Each output box lies in a cube of H and each cube of H meets k, so the
  // distance is at most 2 sqrt(d) / n.
  const Rational limit(4 * d, n * n);
  if (hausdorff_bounds(out, k, limit / Rational(1000)).upper > limit)
    throw Error("internal: refinement moved farther than 2 sqrt(d) / n");
  return out;
}

}  // namespace fullproj
