#include <algorithm>
#include <bit>

#include "fullproj/construct.hpp"

namespace fullproj {

namespace {

int rank_of(std::vector<RationalVector> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < rows.size() && rows[pivot][c].sign() == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[static_cast<std::size_t>(rank)]);
    const RationalVector& p = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][c].sign() == 0) continue;
      const Rational f = rows[r][c] / p[c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] = rows[r][j] - f * p[j];
    }
    ++rank;
  }
  return rank;
}

// sum coeffs[j] * lambda_j  (<= or <)  rhs
struct Ineq {
  RationalVector coeffs;
  Rational rhs;
  bool strict = false;
};

// Fourier-Motzkin elimination with strictness, then back substitution
// choosing interior values where possible.
std::optional<RationalVector> feasible_point(const std::vector<Ineq>& system, int m) {
  std::vector<std::vector<Ineq>> levels(static_cast<std::size_t>(m) + 1);
  levels[static_cast<std::size_t>(m)] = system;
  for (int j = m - 1; j >= 0; --j) {
    const auto& cur = levels[static_cast<std::size_t>(j) + 1];
    std::vector<Ineq> next, pos, neg;
    for (const auto& q : cur) {
      const int s = q.coeffs[static_cast<std::size_t>(j)].sign();
      (s > 0 ? pos : s < 0 ? neg : next).push_back(q);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        const Rational cp = p.coeffs[static_cast<std::size_t>(j)], cn = -n.coeffs[static_cast<std::size_t>(j)];
        Ineq r{RationalVector(static_cast<std::size_t>(m), Rational(0)), p.rhs / cp + n.rhs / cn, p.strict || n.strict};
        for (int i = 0; i < j; ++i)
          r.coeffs[static_cast<std::size_t>(i)] =
              p.coeffs[static_cast<std::size_t>(i)] / cp + n.coeffs[static_cast<std::size_t>(i)] / cn;
        next.push_back(std::move(r));
      }
    // Constant rows decide feasibility right away.
    std::vector<Ineq> kept;
    for (auto& q : next) {
      const bool constant = std::all_of(q.coeffs.begin(), q.coeffs.end(), [](const Rational& c) { return c.sign() == 0; });
      if (!constant) {
        kept.push_back(std::move(q));
        continue;
      }
      if (q.strict ? q.rhs.sign() <= 0 : q.rhs.sign() < 0) return std::nullopt;
    }
    levels[static_cast<std::size_t>(j)] = std::move(kept);
  }
  RationalVector lambda(static_cast<std::size_t>(m), Rational(0));
  for (int j = 0; j < m; ++j) {
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& q : levels[static_cast<std::size_t>(j) + 1]) {
      const Rational c = q.coeffs[static_cast<std::size_t>(j)];
      if (c.sign() == 0) continue;
      Rational rest = q.rhs;
      for (int i = 0; i < j; ++i) rest = rest - q.coeffs[static_cast<std::size_t>(i)] * lambda[static_cast<std::size_t>(i)];
      const Rational v = rest / c;
      if (c.sign() > 0) {
        if (!hi || v < *hi) {
          hi = v;
          hi_strict = q.strict;
        } else if (v == *hi) {
          hi_strict = hi_strict || q.strict;
        }
      } else {
        if (!lo || v > *lo) {
          lo = v;
          lo_strict = q.strict;
        } else if (v == *lo) {
          lo_strict = lo_strict || q.strict;
        }
      }
    }
    Rational value(0);
    if (lo && hi) {
      if (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict))) return std::nullopt;
      value = (*lo + *hi) / Rational(2);
    } else if (lo) {
      value = *lo + Rational(1);
    } else if (hi) {
      value = *hi - Rational(1);
    }
    lambda[static_cast<std::size_t>(j)] = value;
  }
  return lambda;
}

// Bounds on coordinate i of base + D lambda.
void add_coordinate_bound(std::vector<Ineq>& sys, const Flat& v, int i, const Rational& bound, bool upper, bool strict) {
  Ineq q{RationalVector(static_cast<std::size_t>(v.k()), Rational(0)), Rational(0), strict};
  for (int j = 0; j < v.k(); ++j) {
    const Rational c = v.dirs()[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    q.coeffs[static_cast<std::size_t>(j)] = upper ? c : -c;
  }
  const Rational b = v.base()[static_cast<std::size_t>(i)];
  q.rhs = upper ? bound - b : b - bound;
  sys.push_back(std::move(q));
}

bool outer(const Rational& x) { return x <= Rational(1, 20) || x >= Rational(19, 20); }
bool middle(const Rational& x) { return Rational(8, 20) <= x && x <= Rational(14, 20); }
bool in_unit(const Rational& x) { return Rational(0) <= x && x <= Rational(1); }

}  // namespace

Flat::Flat(RationalVector base, std::vector<RationalVector> dirs) : base_(std::move(base)), dirs_(std::move(dirs)) {
  if (base_.empty()) throw Error("flat needs a dimension");
  for (const auto& dv : dirs_)
    if (dv.size() != base_.size()) throw Error("flat direction dimension mismatch");
  if (rank_of(dirs_) != static_cast<int>(dirs_.size())) throw Error("flat directions are linearly dependent");
}

RationalVector Flat::at(const RationalVector& lambda) const {
  RationalVector x = base_;
  for (std::size_t j = 0; j < dirs_.size(); ++j)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] + lambda[j] * dirs_[j][i];
  return x;
}

bool Flat::contains(const RationalVector& x) const {
  if (x.size() != base_.size()) return false;
  auto rows = dirs_;
  RationalVector diff(x.size(), Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - base_[i];
  rows.push_back(diff);
  return rank_of(rows) == k();
}

bool in_band_set_s(const RationalVector& x, int k) {
  if (!std::all_of(x.begin(), x.end(), in_unit)) return false;
  return std::count_if(x.begin(), x.end(), outer) >= k + 1;
}

bool in_band_set_t(const RationalVector& x, int k) {
  for (const auto& c : x)
    if (c < Rational(1, 20) || c > Rational(19, 20)) return false;
  return std::count_if(x.begin(), x.end(), middle) <= k;
}

TaggedPoint find_point_in_S_or_T(const Flat& v) {
  const int d = v.dim(), k = v.k();
  if (2 * k < d) throw Error("requires 2k >= d");
  std::vector<Ineq> cube;
  for (int i = 0; i < d; ++i) {
    add_coordinate_bound(cube, v, i, Rational(0), false, false);
    add_coordinate_bound(cube, v, i, Rational(1), true, false);
  }
  if (!feasible_point(cube, k)) throw Error("flat misses cube");

  // Largest I first: the point of V in the cube with the most outer
  // coordinates, as long as that count reaches k+1.
  for (int size = d; size >= k + 1; --size)
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      if (std::popcount(mask) != size) continue;
      for (std::uint32_t side = 0; side < (1u << d); ++side) {
        if ((side & ~mask) != 0) continue;
        auto sys = cube;
        for (int i = 0; i < d; ++i) {
          if (!((mask >> i) & 1u)) continue;
          if ((side >> i) & 1u)
            add_coordinate_bound(sys, v, i, Rational(19, 20), false, false);
          else
            add_coordinate_bound(sys, v, i, Rational(1, 20), true, false);
        }
        if (auto lam = feasible_point(sys, k)) {
          TaggedPoint out{v.at(*lam), BandTag::S};
          if (!in_band_set_s(out.x, k)) throw Error("internal: S point failed membership");
          return out;
        }
      }
    }

  // Otherwise V meets the inner cube with at most k middle coordinates: at
  // least d-k coordinates are pushed out of [8/20, 14/20].
  std::vector<Ineq> inner;
  for (int i = 0; i < d; ++i) {
    add_coordinate_bound(inner, v, i, Rational(1, 20), false, false);
    add_coordinate_bound(inner, v, i, Rational(19, 20), true, false);
  }
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    if (std::popcount(mask) != d - k) continue;
    for (std::uint32_t side = 0; side < (1u << d); ++side) {
      if ((side & ~mask) != 0) continue;
      auto sys = inner;
      for (int i = 0; i < d; ++i) {
        if (!((mask >> i) & 1u)) continue;
        if ((side >> i) & 1u)
          add_coordinate_bound(sys, v, i, Rational(14, 20), false, true);
        else
          add_coordinate_bound(sys, v, i, Rational(8, 20), true, true);
      }
      if (auto lam = feasible_point(sys, k)) {
        TaggedPoint out{v.at(*lam), BandTag::T};
        if (!in_band_set_t(out.x, k)) throw Error("internal: T point failed membership");
        return out;
      }
    }
  }
  throw Error("internal: flat meets neither S nor T");
}

}  // namespace fullproj
