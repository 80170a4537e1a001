#include "fullproj/ifs.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace fullproj {

IfsSystem::IfsSystem(int d, std::int64_t n, std::vector<IntVector> maps) : d_(d), n_(n), maps_(std::move(maps)) {
  if (d < 1 || n < 1) throw Error("invalid IFS dimension or resolution");
  if (maps_.empty()) throw Error("IFS needs at least one map");
  for (const auto& t : maps_) {
    if (static_cast<int>(t.size()) != d) throw Error("translation dimension mismatch");
    for (auto c : t)
      if (c < 0 || c >= n) throw Error("translation outside the grid");
  }
  std::sort(maps_.begin(), maps_.end());
  if (std::adjacent_find(maps_.begin(), maps_.end()) != maps_.end()) throw Error("duplicate translation");
}

IfsSystem IfsSystem::from_pattern(const Pattern& pattern) {
  if (pattern.size() == 0) throw Error("empty pattern");
  return IfsSystem(pattern.dim(), pattern.n(), pattern.cells().cells());
}

CellSet iterate(const IfsSystem& sys, int depth, std::size_t max_cells) {
  if (depth < 1) throw Error("depth must be >= 1");
  const int d = sys.dim();
  std::int64_t res = 1;
  double count = 1;
  for (int i = 0; i < depth; ++i) {
    if (res > std::numeric_limits<std::int64_t>::max() / sys.n()) throw Error("depth too large");
    res *= sys.n();
    count *= static_cast<double>(sys.maps().size());
  }
  if (count > static_cast<double>(max_cells)) throw Error("depth too large");

  // Digits from coarse to fine: t = sum t_j n^(depth-j).
  std::vector<std::int64_t> flat(static_cast<std::size_t>(d), 0);
  for (int level = 0; level < depth; ++level) {
    std::vector<std::int64_t> next;
    next.reserve(flat.size() * sys.maps().size());
    for (std::size_t i = 0; i < flat.size(); i += static_cast<std::size_t>(d))
      for (const auto& t : sys.maps())
        for (int c = 0; c < d; ++c) next.push_back(flat[i + static_cast<std::size_t>(c)] * sys.n() + t[c]);
    flat = std::move(next);
  }
  return CellSet::from_flat(d, res, std::move(flat));
}

namespace {

// Membership in the cell sumset of K_i + K_i, which is W + nW + ... + n^(i-1)W
// for W = T + T. Each level has at most two digit choices per axis.
class SumsetOracle {
 public:
  explicit SumsetOracle(const IfsSystem& sys) : n_(sys.n()), w_(static_cast<std::size_t>((2 * n_ - 1) * (2 * n_ - 1)), 0) {
    for (const auto& a : sys.maps())
      for (const auto& b : sys.maps()) w_[static_cast<std::size_t>((a[0] + b[0]) * (2 * n_ - 1) + a[1] + b[1])] = 1;
  }

  bool contains(int levels, std::int64_t ux, std::int64_t uy) const {
    if (ux < 0 || uy < 0) return false;
    if (levels == 1) return ux <= 2 * n_ - 2 && uy <= 2 * n_ - 2 && w(ux, uy);
    for (std::int64_t wx = ux % n_; wx <= std::min(ux, 2 * n_ - 2); wx += n_)
      for (std::int64_t wy = uy % n_; wy <= std::min(uy, 2 * n_ - 2); wy += n_)
        if (w(wx, wy) && contains(levels - 1, (ux - wx) / n_, (uy - wy) / n_)) return true;
    return false;
  }

 private:
  bool w(std::int64_t x, std::int64_t y) const { return w_[static_cast<std::size_t>(x * (2 * n_ - 1) + y)] != 0; }

  std::int64_t n_;
  std::vector<char> w_;
};

}  // namespace

std::optional<LatticeCollision> find_sumset_lattice_collision(const IfsSystem& sys, std::int64_t p, std::int64_t q,
                                                               int depth) {
  if (sys.dim() != 2) throw Error("lattice replay is planar");
  if (depth < 1) throw Error("depth must be >= 1");
  const std::int64_t n = sys.n();
  std::int64_t N = 1;
  for (int i = 0; i < depth; ++i) {
    if (N > (std::int64_t{1} << 40) / n) throw Error("depth too large");
    N *= n;
  }
  const SumsetOracle oracle(sys);

  // In units of 1/(2N) a lattice coordinate is X = (2r + 1 + 2n z) n^(i-j)
  // and the sum box of cell u spans [2u, 2u + 4].
  auto coordinates = [&](std::int64_t r, std::int64_t scale) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;  // (z, X)
    for (std::int64_t z = -(r / n) - 1;; ++z) {
      const std::int64_t X = (2 * r + 1 + 2 * n * z) * scale;
      if (X > 4 * N) break;
      if (X >= 0) out.emplace_back(z, X);
    }
    return out;
  };
  std::int64_t scale = N;
  for (int j = 1; j <= depth; ++j) {
    scale /= n;
    const auto xs = coordinates(p, scale), ys = coordinates(q, scale);
    for (const auto& [zx, X] : xs)
      for (const auto& [zy, Y] : ys)
        for (std::int64_t ux = std::max<std::int64_t>(0, (X - 3) / 2); 2 * ux <= X; ++ux) {
          if (2 * ux + 4 < X) continue;
          for (std::int64_t uy = std::max<std::int64_t>(0, (Y - 3) / 2); 2 * uy <= Y; ++uy) {
            if (2 * uy + 4 < Y) continue;
            if (oracle.contains(depth, ux, uy)) return LatticeCollision{j, {zx, zy}, {ux, uy}};
          }
        }
  }
  return std::nullopt;
}

bool sumset_lattice_avoidance(const IfsSystem& sys, const AvoidanceWitness& v, int depth) {
  return !find_sumset_lattice_collision(sys, v.p, v.q, depth);
}

bool open_set_condition(int d, std::int64_t n, const std::vector<IntVector>& maps) {
  if (n < 1) return false;
  // Open boxes (t, t+1)/n and (s, s+1)/n meet iff |t_c - s_c| < 1 on every axis.
  for (std::size_t a = 0; a < maps.size(); ++a)
    for (std::size_t b = a + 1; b < maps.size(); ++b) {
      bool overlap = true;
      for (int c = 0; c < d && overlap; ++c) overlap = std::llabs(maps[a][c] - maps[b][c]) < 1;
      if (overlap) return false;
    }
  return true;
}

bool open_set_condition(const IfsSystem& sys) { return open_set_condition(sys.dim(), sys.n(), sys.maps()); }

CellSet product_lift(const CellSet& k) {
  const int d = k.dim();
  std::vector<std::int64_t> flat;
  flat.reserve(k.size() * static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(k.n()));
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::int64_t s = 0; s < k.n(); ++s) {
      const auto c = k[i];
      flat.insert(flat.end(), c.begin(), c.end());
      flat.push_back(s);
    }
  return CellSet::from_flat(d + 1, k.n(), std::move(flat), k.sumset_space());
}

CellSet desklegs_lift(const CellSet& k) {
  const int d = k.dim();
  const IntVector origin(static_cast<std::size_t>(d), 0);
  if (!k.contains(origin)) throw Error("origin cell missing");
  std::vector<std::int64_t> flat;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto c = k[i];
    flat.insert(flat.end(), c.begin(), c.end());
    flat.push_back(0);
  }
  for (std::uint32_t corner = 0; corner < (1u << d); ++corner)
    for (std::int64_t s = 0; s < k.n(); ++s) {
      for (int c = 0; c < d; ++c) flat.push_back(((corner >> c) & 1u) ? k.n() - 1 : 0);
      flat.push_back(s);
    }
  // from_flat sorts; duplicates (origin layer, n = 1 corners) are merged.
  return CellSet::from_flat(d + 1, k.n(), std::move(flat));
}

IfsSystem selfsimilar_lift(const Pattern& pattern, int d) {
  if (pattern.dim() != 2) throw Error("pattern must be planar");
  if (d < 2) throw Error("target dimension must be >= 2");
  const std::int64_t n = pattern.n();
  std::vector<IntVector> maps;
  std::int64_t extra = 1;
  for (int i = 2; i < d; ++i) extra *= n;
  for (const auto& t : pattern.cells().cells())
    for (std::int64_t g = 0; g < extra; ++g) {
      IntVector m = t;
      std::int64_t rest = g;
      for (int i = 2; i < d; ++i) {
        m.push_back(rest % n);
        rest /= n;
      }
      maps.push_back(std::move(m));
    }
  return IfsSystem(d, n, std::move(maps));
}

}  // namespace fullproj
