#pragma once

#include <cstdint>
#include <random>

#include "fullproj/grid.hpp"

namespace fullproj {

// splitmix64 step; used to derive independent seeds from one master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic generator with platform-independent helpers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [lo, hi]; the modulo bias is irrelevant at the ranges used.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return (next() >> 63) != 0; }
  bool chance(std::uint64_t num, std::uint64_t den) { return next() % den < num; }

 private:
  std::mt19937_64 engine_;
};

// Line through a random rational point of the unit cube. Coordinates are
// snapped to the resolution-n grid with some probability so that lines
// through grid points and along grid hyperplanes are well represented.
Line random_line_through_cube(Rng& rng, int d, std::int64_t n);

// Rejection-samples random_line_through_cube until the line strongly
// intersects the unit cube.
Line random_strong_line(Rng& rng, int d, std::int64_t n);

}  // namespace fullproj
