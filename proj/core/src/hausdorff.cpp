#include <algorithm>
#include <memory>
#include <numeric>
#include <queue>

#include "fullproj/construct.hpp"

namespace fullproj {

namespace {

using i128 = __int128;

Rational from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class z(static_cast<unsigned long>(u >> 64));
  z <<= 64;
  z += mpz_class(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  if (neg) z = -z;
  return Rational(mpq_class(z));
}

// Nonnegative and below 2^126 at every call site.
i128 to_i128(const mpz_class& z) {
  const mpz_class hi = z >> 64;
  const mpz_class lo = z - (hi << 64);
  return (static_cast<i128>(hi.get_ui()) << 64) + static_cast<i128>(lo.get_ui());
}

// Boxes in integer units of 1/S.
struct Boxes {
  int d;
  std::vector<std::int64_t> lo, hi;  // flat, d per box
  std::size_t size() const { return lo.size() / static_cast<std::size_t>(d); }
};

Boxes scale(const CellSet& c, std::int64_t S) {
  Boxes b{c.dim(), {}, {}};
  const std::int64_t w = S / c.n();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int k = 0; k < c.dim(); ++k) {
      b.lo.push_back(c[i][k] * w);
      b.hi.push_back((c[i][k] + 1) * w);
    }
  return b;
}

struct Node {
  std::vector<std::int64_t> lo, hi;
  i128 ub;
  std::shared_ptr<const std::vector<std::uint32_t>> cand;
  bool operator<(const Node& o) const { return ub < o.ub; }
};

// sup over the A boxes of the squared distance to the union of B.
std::pair<i128, i128> directed(const Boxes& A, const Boxes& B, i128 tol) {
  const int d = A.d;
  auto near2 = [&](const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi, std::size_t j) {
    i128 s = 0;
    for (int k = 0; k < d; ++k) {
      const std::int64_t bl = B.lo[j * d + k], bh = B.hi[j * d + k];
      const std::int64_t g = std::max<std::int64_t>({0, bl - hi[k], lo[k] - bh});
      s += static_cast<i128>(g) * g;
    }
    return s;
  };
  auto far2 = [&](const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi, std::size_t j) {
    i128 s = 0;
    for (int k = 0; k < d; ++k) {
      const std::int64_t bl = B.lo[j * d + k], bh = B.hi[j * d + k];
      const std::int64_t g = std::max<std::int64_t>({0, bl - lo[k], hi[k] - bh});
      s += static_cast<i128>(g) * g;
    }
    return s;
  };

  i128 lower = 0, stuck = 0;
  std::priority_queue<Node> queue;

  // Evaluates a box: tightens candidates, raises the lower bound from its
  // corners, and queues it if it can still exceed the lower bound.
  auto visit = [&](std::vector<std::int64_t> lo, std::vector<std::int64_t> hi, const std::vector<std::uint32_t>& cand) {
    i128 ub = -1;
    for (auto j : cand) {
      const i128 f = far2(lo, hi, j);
      if (ub < 0 || f < ub) ub = f;
    }
    auto kept = std::make_shared<std::vector<std::uint32_t>>();
    for (auto j : cand)
      if (near2(lo, hi, j) <= ub) kept->push_back(j);
    for (std::uint32_t corner = 0; corner < (1u << d); ++corner) {
      i128 best = -1;
      for (auto j : *kept) {
        i128 s = 0;
        for (int k = 0; k < d; ++k) {
          const std::int64_t x = ((corner >> k) & 1u) ? hi[k] : lo[k];
          const std::int64_t g = std::max<std::int64_t>({0, B.lo[j * d + k] - x, x - B.hi[j * d + k]});
          s += static_cast<i128>(g) * g;
        }
        if (best < 0 || s < best) best = s;
      }
      lower = std::max(lower, best);
    }
    if (ub > lower) queue.push(Node{std::move(lo), std::move(hi), ub, std::move(kept)});
  };

  std::vector<std::uint32_t> all(B.size());
  std::iota(all.begin(), all.end(), 0u);
  for (std::size_t i = 0; i < A.size(); ++i)
    visit({A.lo.begin() + static_cast<std::ptrdiff_t>(i * d), A.lo.begin() + static_cast<std::ptrdiff_t>((i + 1) * d)},
          {A.hi.begin() + static_cast<std::ptrdiff_t>(i * d), A.hi.begin() + static_cast<std::ptrdiff_t>((i + 1) * d)}, all);

  while (!queue.empty()) {
    Node node = queue.top();
    if (node.ub <= lower || node.ub - lower <= tol) break;
    queue.pop();
    bool splittable = true;
    for (int k = 0; k < d; ++k) splittable = splittable && (node.hi[k] - node.lo[k]) % 2 == 0 && node.hi[k] > node.lo[k];
    if (!splittable) {
      stuck = std::max(stuck, node.ub);
      continue;
    }
    for (std::uint32_t part = 0; part < (1u << d); ++part) {
      std::vector<std::int64_t> lo = node.lo, hi = node.hi;
      for (int k = 0; k < d; ++k) {
        const std::int64_t mid = (node.lo[k] + node.hi[k]) / 2;
        ((part >> k) & 1u) ? lo[k] = mid : hi[k] = mid;
      }
      visit(std::move(lo), std::move(hi), *node.cand);
    }
  }
  i128 upper = std::max(lower, stuck);
  if (!queue.empty()) upper = std::max(upper, queue.top().ub);
  return {lower, upper};
}

}  // namespace

HausdorffBounds hausdorff_bounds(const CellSet& a, const CellSet& b, const Rational& tolerance) {
  if (a.empty() || b.empty()) throw Error("empty set");
  if (a.dim() != b.dim()) throw Error("dimension mismatch");
  const std::int64_t l = std::lcm(a.n(), b.n());
  // Leave room for subdivision while keeping squared sums inside 128 bits.
  int room = 0;
  while (room < 24 && (l >> (52 - room - 1)) == 0) ++room;
  const std::int64_t S = l << room;
  const Boxes A = scale(a, S), B = scale(b, S);
  const Rational scaled_tol = (tolerance * Rational(S) * Rational(S)).floor();
  const i128 tol = to_i128(scaled_tol.raw().get_num());
  const auto ab = directed(A, B, tol), ba = directed(B, A, tol);
  const Rational denom = Rational(S) * Rational(S);
  return {from_i128(std::max(ab.first, ba.first)) / denom, from_i128(std::max(ab.second, ba.second)) / denom};
}

Rational hausdorff_distance(const CellSet& a, const CellSet& b) { return hausdorff_bounds(a, b).upper; }

}  // namespace fullproj
