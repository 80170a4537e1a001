#include <algorithm>
#include <map>
#include <set>

#include "dual_sweep.hpp"
#include "fullproj/sampling.hpp"
#include "fullproj/trace.hpp"

namespace fullproj {

namespace {

using detail::Slope;
using detail::SweepPoint;
using detail::SweepSample;

// Work in units where a resolution-N cell has side 4. For slope a in
// [0, 1] a line w = a u + b strongly meets the cell [4i, 4i+4] x [4j, 4j+4]
// iff sign(4i+1, 4j+4) >= 0 and sign(4i+3, 4j) <= 0; for a in [-1, 0] iff
// sign(4i+1, 4j) <= 0 and sign(4i+3, 4j+4) >= 0. The unit square is the
// cell of side 4N with quarter points N and 3N.
class StrongCoverSweep {
 public:
  StrongCoverSweep(const CellSet& cells, int family) : N_(cells.n()), family_(family) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::uint32_t> index;
    auto point = [&](std::int64_t u, std::int64_t w) {
      auto [it, inserted] = index.try_emplace({u, w}, static_cast<std::uint32_t>(pts_.size()));
      if (inserted) pts_.push_back({u, w});
      return it->second;
    };
    const std::int64_t S = 4 * N_;
    sq_[0] = point(N_, S);
    sq_[1] = point(3 * N_, 0);
    sq_[2] = point(N_, 0);
    sq_[3] = point(3 * N_, S);

    std::vector<std::pair<std::int64_t, std::int64_t>> local;
    for (std::size_t k = 0; k < cells.size(); ++k)
      local.emplace_back(family == 0 ? cells[k][0] : cells[k][1], family == 0 ? cells[k][1] : cells[k][0]);
    cell_count_ = local.size();
    // Roles for positive (0) and negative (1) slopes.
    for (std::size_t c = 0; c < local.size(); ++c) {
      const auto [i, j] = local[c];
      const auto cu = static_cast<std::uint32_t>(c);
      add_role(0, point(4 * i + 1, 4 * j + 4), cu, true);
      add_role(0, point(4 * i + 3, 4 * j), cu, false);
      add_role(1, point(4 * i + 1, 4 * j), cu, false);
      add_role(1, point(4 * i + 3, 4 * j + 4), cu, true);
    }
    for (auto& r : roles_) r.resize(pts_.size());
    sign_.assign(pts_.size(), 1);
    satisfied_.assign(cell_count_, 1);
  }

  std::span<const SweepPoint> points() const { return pts_; }

  void begin_slice(const Slope& a) {
    slot_ = a.p >= 0 ? 0 : 1;
    std::fill(sign_.begin(), sign_.end(), std::int8_t{1});
    std::fill(satisfied_.begin(), satisfied_.end(), std::uint8_t{1});
    hits_ = 0;
  }
  void flip_zero(std::uint32_t i) {
    sign_[i] = 0;
    for (const auto& r : roles_[slot_][i])
      if (!r.nonneg) bump(r.cell, +1);  // "<= 0" becomes true
  }
  void flip_negative(std::uint32_t i) {
    sign_[i] = -1;
    for (const auto& r : roles_[slot_][i])
      if (r.nonneg) bump(r.cell, -1);  // ">= 0" becomes false
  }
  void sample(const SweepSample& s) {
    if (found_ || hits_ != 0) return;
    const bool square = slot_ == 0 ? (sign_[sq_[0]] >= 0 && sign_[sq_[1]] <= 0)
                                   : (sign_[sq_[2]] <= 0 && sign_[sq_[3]] >= 0);
    if (square) found_ = s;
  }
  bool done() const { return found_.has_value(); }

  std::optional<Line> witness() const {
    if (!found_) return std::nullopt;
    const Rational offset = Rational(found_->num, found_->den) / Rational(4 * N_);
    if (family_ == 0) return Line({Rational(0), offset}, {Rational(found_->a.q), Rational(found_->a.p)});
    return Line({offset, Rational(0)}, {Rational(found_->a.p), Rational(found_->a.q)});
  }

 private:
  struct Role {
    std::uint32_t cell;
    bool nonneg;  // condition is sign >= 0, otherwise sign <= 0
  };

  void add_role(int slot, std::uint32_t point, std::uint32_t cell, bool nonneg) {
    auto& r = roles_[static_cast<std::size_t>(slot)];
    if (r.size() <= point) r.resize(point + 1);
    r[point].push_back({cell, nonneg});
  }

  void bump(std::uint32_t cell, int delta) {
    auto& s = satisfied_[cell];
    if (s == 2) --hits_;
    s = static_cast<std::uint8_t>(s + delta);
    if (s == 2) ++hits_;
  }

  std::int64_t N_;
  int family_;
  std::vector<SweepPoint> pts_;
  std::uint32_t sq_[4] = {};
  std::size_t cell_count_ = 0;
  std::vector<std::vector<Role>> roles_[2];
  std::size_t slot_ = 0;
  std::vector<std::int8_t> sign_;
  std::vector<std::uint8_t> satisfied_;
  std::int64_t hits_ = 0;
  std::optional<SweepSample> found_;
};

Box unit_box2() { return Box{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}}; }

}  // namespace

std::optional<Line> find_line_without_strong_cell(const CellSet& cells) {
  if (cells.dim() != 2) throw Error("strong coverage sweep needs d = 2");
  for (int family = 0; family < 2; ++family) {
    StrongCoverSweep sweep(cells, family);
    detail::sweep_dual_arrangement(sweep.points(), Slope{-1, 1}, Slope{1, 1}, sweep);
    if (auto line = sweep.witness()) {
      if (!strongly_intersects(*line, unit_box2())) throw Error("internal: strong sweep witness misses the square");
      for (std::size_t k = 0; k < cells.size(); ++k)
        if (strongly_intersects(*line, cell_box(2, cells.n(), cells[k])))
          throw Error("internal: strong sweep witness meets a cell strongly");
      return line;
    }
  }
  return std::nullopt;
}

ProjectionReport projection_determination_report(std::int64_t n, std::size_t trials, std::uint64_t seed) {
  constexpr int d = 3;
  Rng rng(seed);
  ProjectionReport report;
  auto projections = [&](const Trace& t) {
    std::vector<std::set<std::pair<std::int64_t, std::int64_t>>> pr(d);
    for (std::size_t k = 0; k < t.size(); ++k) {
      auto c = t.cells()[k];
      pr[0].insert({c[1], c[2]});
      pr[1].insert({c[0], c[2]});
      pr[2].insert({c[0], c[1]});
    }
    return pr;
  };
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Line a = random_line_through_cube(rng, d, n);
    Line b = a;
    switch (rng.uniform(0, 3)) {
      case 0: break;
      case 1: {
        // Parallel copy through a nearby point.
        RationalVector base = a.base();
        base[static_cast<std::size_t>(rng.uniform(0, d - 1))] += Rational(rng.uniform(-3, 3), 7 * n);
        b = Line(base, a.dir());
        break;
      }
      default: b = random_line_through_cube(rng, d, n); break;
    }
    std::optional<Trace> ta, tb;
    try {
      ta = compute_trace(a, n);
      tb = compute_trace(b, n);
    } catch (const Error&) {
      continue;  // the shifted copy left the cube
    }
    ++report.pairs;
    if (projections(*ta) != projections(*tb)) continue;
    ++report.projection_matches;
    if (*ta != *tb) ++report.counterexamples;
  }
  return report;
}

bool check_projection_determination(std::int64_t n, std::size_t trials, std::uint64_t seed) {
  return projection_determination_report(n, trials, seed).ok();
}

CoverageReport strong_coverage_report(const CellSet& k, std::size_t samples, std::uint64_t seed) {
  CoverageReport report;
  const int d = k.dim();
  Rng rng(seed);
  const Box unit{RationalVector(static_cast<std::size_t>(d), Rational(0)),
                 RationalVector(static_cast<std::size_t>(d), Rational(1))};
  for (std::size_t s = 0; s < samples && report.sampled_ok; ++s) {
    const Line line = random_strong_line(rng, d, k.n());
    bool meets = false;
    for (std::size_t c = 0; c < k.size() && !meets; ++c) meets = line_box_intersection(line, cell_box(d, k.n(), k[c])).has_value();
    if (!meets) {
      report.sampled_ok = false;
      report.witness = line;
    }
  }
  if (d == 2) {
    report.certificate_ran = true;
    if (k.empty()) {
      report.certificate_ok = false;
    } else if (k.n() <= 4) {
      // Every possible reduced strong trace must contain a cell of k.
      for (const auto& member : reduced_trace_range_2d(k.n())) {
        bool hit = false;
        for (std::size_t c = 0; c < member.cells.size() && !hit; ++c) hit = k.contains(member.cells[c]);
        if (!hit) {
          report.certificate_ok = false;
          break;
        }
      }
    } else {
      // Exact sweep: no line strongly meets the square while strongly
      // meeting no cell of k.
      report.certificate_ok = !find_line_without_strong_cell(k).has_value();
    }
    if (!report.certificate_ok && !report.witness) {
      if (auto w = find_line_without_strong_cell(k)) report.witness = w;
    }
  }
  return report;
}

bool strong_coverage_check(const CellSet& k, std::size_t samples, std::uint64_t seed) {
  return strong_coverage_report(k, samples, seed).ok();
}

}  // namespace fullproj
