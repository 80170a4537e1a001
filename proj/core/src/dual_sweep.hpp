#pragma once

// Exact sweep over the arrangement dual to a finite set of integer points.
//
// Lines are w = a*u + b with a = p/q in a closed slope range. Every sign
// vector (point above / on / below the line) that a line in the range can
// realize is visited: slices are taken at every slope determined by two
// points plus the midpoints between consecutive ones, and within a slice b
// sweeps upward through each group of collinear points.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace fullproj::detail {

struct SweepPoint {
  std::int64_t u = 0, w = 0;
};

struct Slope {
  std::int64_t p = 0, q = 1;  // q > 0, gcd(p, q) = 1
};

inline Slope make_slope(std::int64_t p, std::int64_t q) {
  if (q < 0) p = -p, q = -q;
  const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
  return g > 1 ? Slope{p / g, q / g} : Slope{p, q};
}

inline bool slope_less(const Slope& a, const Slope& b) {
  return static_cast<__int128>(a.p) * b.q < static_cast<__int128>(b.p) * a.q;
}

inline bool slope_equal(const Slope& a, const Slope& b) { return a.p == b.p && a.q == b.q; }

// The line w = (p/q) u + num/den.
struct SweepSample {
  Slope a;
  std::int64_t num = 0, den = 1;
};

std::vector<Slope> critical_slopes(std::span<const SweepPoint> pts, Slope lo, Slope hi);

// Consumer requirements:
//   void begin_slice(const Slope&)   all points reset to sign +
//   void flip_zero(std::uint32_t)    point now lies on the line
//   void flip_negative(std::uint32_t) point now lies below the line
//   void sample(const SweepSample&)  current sign vector is realized
//   bool done() const                stop early
template <class Consumer>
void sweep_dual_arrangement(std::span<const SweepPoint> pts, Slope lo, Slope hi, Consumer& consumer) {
  if (pts.empty() || slope_less(hi, lo)) return;
  const std::vector<Slope> crit = critical_slopes(pts, lo, hi);

  std::vector<Slope> slices;
  slices.reserve(2 * crit.size());
  for (std::size_t i = 0; i < crit.size(); ++i) {
    slices.push_back(crit[i]);
    if (i + 1 < crit.size())
      slices.push_back(make_slope(crit[i].p * crit[i + 1].q + crit[i + 1].p * crit[i].q,
                                  2 * crit[i].q * crit[i + 1].q));
  }

  const std::size_t m = pts.size();
  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  std::vector<std::int64_t> key(m);

  for (const Slope& a : slices) {
    for (std::size_t i = 0; i < m; ++i) key[i] = a.q * pts[i].w - a.p * pts[i].u;
    // The previous order is nearly sorted, so insertion sort is linear plus
    // the number of pairs that swapped.
    for (std::size_t i = 1; i < m; ++i) {
      const std::uint32_t x = order[i];
      const std::int64_t kx = key[x];
      std::size_t j = i;
      while (j > 0 && key[order[j - 1]] > kx) {
        order[j] = order[j - 1];
        --j;
      }
      order[j] = x;
    }

    consumer.begin_slice(a);
    std::size_t g = 0;
    while (g < m) {
      std::size_t e = g;
      const std::int64_t v = key[order[g]];
      while (e < m && key[order[e]] == v) ++e;
      for (std::size_t i = g; i < e; ++i) consumer.flip_zero(order[i]);
      consumer.sample(SweepSample{a, 2 * v, 2 * a.q});
      for (std::size_t i = g; i < e; ++i) consumer.flip_negative(order[i]);
      if (e < m) consumer.sample(SweepSample{a, v + key[order[e]], 2 * a.q});
      if (consumer.done()) return;
      g = e;
    }
  }
}

}  // namespace fullproj::detail
