#include "fullproj/sampling.hpp"

namespace fullproj {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

Rational random_coordinate(Rng& rng, std::int64_t n) {
  if (rng.chance(1, 4)) return Rational(rng.uniform(0, n), n);
  const std::int64_t den = n * 997;
  return Rational(rng.uniform(0, den), den);
}

}  // namespace

Line random_line_through_cube(Rng& rng, int d, std::int64_t n) {
  const std::size_t ud = static_cast<std::size_t>(d);
  RationalVector p(ud), q(ud);
  for (auto& x : p) x = random_coordinate(rng, n);
  if (rng.chance(1, 4)) {
    // Second point of the cube; both may be grid points.
    for (auto& x : q) x = random_coordinate(rng, n);
    if (p != q) return Line::through(std::move(p), std::move(q));
  }
  RationalVector dir(ud);
  bool nonzero = false;
  for (auto& v : dir) {
    v = rng.chance(1, 5) ? Rational(0) : Rational(rng.uniform(-12, 12), rng.uniform(1, 7));
    nonzero = nonzero || v.sign() != 0;
  }
  if (!nonzero) dir[static_cast<std::size_t>(rng.uniform(0, d - 1))] = Rational(1);
  return Line(std::move(p), std::move(dir));
}

Line random_strong_line(Rng& rng, int d, std::int64_t n) {
  const Box unit{RationalVector(static_cast<std::size_t>(d), Rational(0)),
                 RationalVector(static_cast<std::size_t>(d), Rational(1))};
  while (true) {
    Line line = random_line_through_cube(rng, d, n);
    if (strongly_intersects(line, unit)) return line;
  }
}

}  // namespace fullproj
