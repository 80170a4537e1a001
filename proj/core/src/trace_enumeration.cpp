#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

#include "dual_sweep.hpp"
#include "fullproj/trace.hpp"

namespace fullproj {

namespace detail {

std::vector<Slope> critical_slopes(std::span<const SweepPoint> pts, Slope lo, Slope hi) {
  std::vector<std::int64_t> us, ws;
  for (const auto& p : pts) us.push_back(p.u), ws.push_back(p.w);
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());

  std::vector<std::int64_t> du, dw;
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t j = i + 1; j < us.size(); ++j) du.push_back(us[j] - us[i]);
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = 0; j < ws.size(); ++j) dw.push_back(ws[j] - ws[i]);
  std::sort(du.begin(), du.end());
  du.erase(std::unique(du.begin(), du.end()), du.end());
  std::sort(dw.begin(), dw.end());
  dw.erase(std::unique(dw.begin(), dw.end()), dw.end());

  std::vector<Slope> out{lo, hi};
  for (std::int64_t dx : du) {
    // lo <= dy/dx <= hi  <=>  lo.p*dx <= dy*lo.q  and  dy*hi.q <= hi.p*dx
    auto first = std::lower_bound(dw.begin(), dw.end(), 0, [&](std::int64_t dy, int) {
      return static_cast<__int128>(dy) * lo.q < static_cast<__int128>(lo.p) * dx;
    });
    for (auto it = first; it != dw.end(); ++it) {
      if (static_cast<__int128>(*it) * hi.q > static_cast<__int128>(hi.p) * dx) break;
      out.push_back(make_slope(*it, dx));
    }
  }
  std::sort(out.begin(), out.end(), slope_less);
  out.erase(std::unique(out.begin(), out.end(), slope_equal), out.end());
  return out;
}

}  // namespace detail

namespace {

using detail::Slope;
using detail::SweepPoint;
using detail::SweepSample;

using Mask = std::vector<std::uint64_t>;

struct MaskHash {
  std::size_t operator()(const Mask& m) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t w : m) h = (h ^ w) * 0x100000001b3ULL ^ (h >> 29);
    return h;
  }
};

void toggle(Mask& m, std::size_t bit) { m[bit >> 6] ^= std::uint64_t{1} << (bit & 63); }

// Grid points of an N x N grid in family-local (u, w) coordinates.
// Index is X * (N + 1) + Y regardless of family.
std::vector<SweepPoint> grid_points(std::int64_t N, int family) {
  std::vector<SweepPoint> pts;
  pts.reserve(static_cast<std::size_t>((N + 1) * (N + 1)));
  for (std::int64_t x = 0; x <= N; ++x)
    for (std::int64_t y = 0; y <= N; ++y) pts.push_back(family == 0 ? SweepPoint{x, y} : SweepPoint{y, x});
  return pts;
}

// Cells incident to each grid point; a closed cell is missed exactly when
// all four corners have the same strict sign.
class CornerTracker {
 public:
  explicit CornerTracker(std::int64_t N) : N_(N), incident_(static_cast<std::size_t>((N + 1) * (N + 1))) {
    for (std::int64_t x = 0; x <= N; ++x)
      for (std::int64_t y = 0; y <= N; ++y) {
        auto& inc = incident_[static_cast<std::size_t>(x * (N + 1) + y)];
        inc.fill(-1);
        int k = 0;
        for (std::int64_t i = x - 1; i <= x; ++i)
          for (std::int64_t j = y - 1; j <= y; ++j)
            if (i >= 0 && j >= 0 && i < N && j < N) inc[static_cast<std::size_t>(k++)] = static_cast<std::int32_t>(i * N + j);
      }
    pos_.resize(static_cast<std::size_t>(N * N));
    neg_.resize(static_cast<std::size_t>(N * N));
  }

  void reset() {
    std::fill(pos_.begin(), pos_.end(), std::uint8_t{4});
    std::fill(neg_.begin(), neg_.end(), std::uint8_t{0});
  }

  template <class OnChange>
  void flip_zero(std::uint32_t point, OnChange&& on_change) {
    for (std::int32_t c : incident_[point]) {
      if (c < 0) break;
      const bool was = met(c);
      --pos_[static_cast<std::size_t>(c)];
      if (met(c) != was) on_change(c, !was);
    }
  }

  template <class OnChange>
  void flip_negative(std::uint32_t point, OnChange&& on_change) {
    for (std::int32_t c : incident_[point]) {
      if (c < 0) break;
      const bool was = met(c);
      ++neg_[static_cast<std::size_t>(c)];
      if (met(c) != was) on_change(c, !was);
    }
  }

  std::int64_t N() const { return N_; }

 private:
  bool met(std::int32_t c) const {
    return pos_[static_cast<std::size_t>(c)] != 4 && neg_[static_cast<std::size_t>(c)] != 4;
  }

  std::int64_t N_;
  std::vector<std::array<std::int32_t, 4>> incident_;
  std::vector<std::uint8_t> pos_, neg_;
};

TraceFamily2D::Witness make_witness(int family, const SweepSample& s) {
  return TraceFamily2D::Witness{static_cast<std::uint8_t>(family), s.a.p, s.a.q, s.num, s.den};
}

class TraceCollector {
 public:
  TraceCollector(std::int64_t n, int family, std::unordered_map<Mask, TraceFamily2D::Witness, MaskHash>& found)
      : tracker_(n), family_(family), found_(found), mask_(static_cast<std::size_t>((n * n + 63) / 64)) {}

  void begin_slice(const Slope&) {
    tracker_.reset();
    std::fill(mask_.begin(), mask_.end(), 0);
    met_ = 0;
    dirty_ = false;
  }
  void flip_zero(std::uint32_t i) { tracker_.flip_zero(i, [this](std::int32_t c, bool m) { changed(c, m); }); }
  void flip_negative(std::uint32_t i) { tracker_.flip_negative(i, [this](std::int32_t c, bool m) { changed(c, m); }); }
  void sample(const SweepSample& s) {
    if (!dirty_ || met_ == 0) return;
    dirty_ = false;
    found_.try_emplace(mask_, make_witness(family_, s));
  }
  bool done() const { return false; }

 private:
  void changed(std::int32_t c, bool now_met) {
    toggle(mask_, static_cast<std::size_t>(c));
    met_ += now_met ? 1 : -1;
    dirty_ = true;
  }

  CornerTracker tracker_;
  int family_;
  std::unordered_map<Mask, TraceFamily2D::Witness, MaskHash>& found_;
  Mask mask_;
  std::int64_t met_ = 0;
  bool dirty_ = false;
};

std::vector<std::uint32_t> mask_to_linear(const Mask& m) {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < m.size(); ++w)
    for (std::uint64_t bits = m[w]; bits; bits &= bits - 1)
      out.push_back(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits))));
  return out;
}

const Slope kMinusOne{-1, 1};
const Slope kPlusOne{1, 1};

}  // namespace

TraceFamily2D enumerate_traces_2d(std::int64_t n) {
  if (n < 1) throw Error("resolution must be >= 1");
  if (n > 64) throw Error("resolution too large for planar trace enumeration");
  std::unordered_map<Mask, TraceFamily2D::Witness, MaskHash> found;
  for (int family = 0; family < 2; ++family) {
    const auto pts = grid_points(n, family);
    TraceCollector collector(n, family, found);
    detail::sweep_dual_arrangement(std::span<const SweepPoint>(pts), kMinusOne, kPlusOne, collector);
  }
  TraceFamily2D out(n);
  for (const auto& [mask, w] : found) out.add(mask_to_linear(mask), w);
  out.finalize();
  return out;
}

namespace {

// Tracks the signs of a few named points.
class PointSigns {
 public:
  explicit PointSigns(std::size_t count) : sign_(count, 1) {}
  void reset() { std::fill(sign_.begin(), sign_.end(), std::int8_t{1}); }
  void zero(std::uint32_t i) { sign_[i] = 0; }
  void negative(std::uint32_t i) { sign_[i] = -1; }
  int operator[](std::uint32_t i) const { return sign_[i]; }

 private:
  std::vector<std::int8_t> sign_;
};

// Reduced strong traces at coarse resolution n from the fine grid 8n.
class ReducedRangeCollector {
 public:
  struct Key {
    int refax;
    Mask mask;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return MaskHash{}(k.mask) * 31 + static_cast<std::size_t>(k.refax); }
  };
  using Found = std::unordered_map<Key, TraceFamily2D::Witness, KeyHash>;

  ReducedRangeCollector(std::int64_t n, int family, Found& found)
      : n_(n),
        N_(8 * n),
        tracker_(8 * n),
        signs_(static_cast<std::size_t>((8 * n + 1) * (8 * n + 1))),
        family_(family),
        found_(found),
        counts_(static_cast<std::size_t>(n * n * 8)),
        distinct_(static_cast<std::size_t>(n * n)),
        mask_(static_cast<std::size_t>((n * n + 63) / 64)) {}

  void begin_slice(const Slope& a) {
    // Slope +-1 in the second family duplicates the first family's lines
    // and has reference axis 1, not 2.
    active_ = !(family_ == 1 && (a.p == a.q || a.p == -a.q));
    positive_ = a.p >= 0;
    tracker_.reset();
    signs_.reset();
    std::fill(counts_.begin(), counts_.end(), std::uint8_t{0});
    std::fill(distinct_.begin(), distinct_.end(), std::uint8_t{0});
    std::fill(mask_.begin(), mask_.end(), 0);
    selected_ = 0;
    dirty_ = false;
  }
  void flip_zero(std::uint32_t i) {
    if (!active_) return;
    signs_.zero(i);
    tracker_.flip_zero(i, [this](std::int32_t c, bool m) { changed(c, m); });
  }
  void flip_negative(std::uint32_t i) {
    if (!active_) return;
    signs_.negative(i);
    tracker_.flip_negative(i, [this](std::int32_t c, bool m) { changed(c, m); });
  }
  void sample(const SweepSample& s) {
    if (!active_ || !dirty_ || selected_ == 0) return;
    if (!square_strong()) return;
    dirty_ = false;
    found_.try_emplace(Key{family_ + 1, mask_}, make_witness(family_, s));
  }
  bool done() const { return false; }

 private:
  std::uint32_t local_index(std::int64_t u, std::int64_t w) const {
    const std::int64_t x = family_ == 0 ? u : w, y = family_ == 0 ? w : u;
    return static_cast<std::uint32_t>(x * (N_ + 1) + y);
  }

  // The line strongly meets the unit square, tested at quarter points.
  bool square_strong() const {
    const std::int64_t q1 = N_ / 4, q3 = 3 * N_ / 4;
    if (positive_) return signs_[local_index(q1, N_)] >= 0 && signs_[local_index(q3, 0)] <= 0;
    return signs_[local_index(q1, 0)] <= 0 && signs_[local_index(q3, N_)] >= 0;
  }

  void changed(std::int32_t c, bool now_met) {
    {
      const std::int64_t i = c / N_, j = c % N_;
      // Family 0 uses the x index as projection, family 1 the y index.
      const std::int64_t proj = family_ == 0 ? i % 8 : j % 8;
      const std::size_t coarse = static_cast<std::size_t>((i / 8) * n_ + j / 8);
      auto& cnt = counts_[coarse * 8 + static_cast<std::size_t>(proj)];
      const bool before = distinct_[coarse] >= 4;
      if (now_met) {
        if (cnt++ == 0) ++distinct_[coarse];
      } else {
        if (--cnt == 0) --distinct_[coarse];
      }
      const bool after = distinct_[coarse] >= 4;
      if (before != after) {
        toggle(mask_, coarse);
        selected_ += after ? 1 : -1;
        dirty_ = true;
      }
    }
  }

  std::int64_t n_, N_;
  CornerTracker tracker_;
  PointSigns signs_;
  int family_;
  Found& found_;
  std::vector<std::uint8_t> counts_;
  std::vector<std::uint8_t> distinct_;
  Mask mask_;
  std::int64_t selected_ = 0;
  bool dirty_ = false;
  bool active_ = true;
  bool positive_ = true;
};

}  // namespace

std::vector<ReducedStrongTrace> reduced_trace_range_2d(std::int64_t n) {
  if (n < 1) throw Error("resolution must be >= 1");
  if (n > 16) throw Error("resolution too large for the reduced trace range");
  ReducedRangeCollector::Found found;
  for (int family = 0; family < 2; ++family) {
    const auto pts = grid_points(8 * n, family);
    ReducedRangeCollector collector(n, family, found);
    detail::sweep_dual_arrangement(std::span<const SweepPoint>(pts), kMinusOne, kPlusOne, collector);
  }
  std::vector<ReducedStrongTrace> out;
  out.reserve(found.size());
  for (const auto& [key, w] : found) {
    std::vector<std::int64_t> flat;
    for (std::uint32_t c : mask_to_linear(key.mask)) {
      flat.push_back(c / n);
      flat.push_back(c % n);
    }
    out.push_back(ReducedStrongTrace{key.refax, CellSet::from_flat(2, n, std::move(flat))});
  }
  std::sort(out.begin(), out.end(), [](const ReducedStrongTrace& a, const ReducedStrongTrace& b) {
    if (a.refax != b.refax) return a.refax < b.refax;
    return a.cells < b.cells;
  });
  return out;
}

}  // namespace fullproj
