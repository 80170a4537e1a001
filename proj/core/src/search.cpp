#include "fullproj/search.hpp"

#include <algorithm>
#include <numeric>

#include "fullproj/sampling.hpp"

namespace fullproj {

namespace {

std::vector<IntVector> cells_from_flags(std::int64_t n, const std::vector<char>& in) {
  std::vector<IntVector> cells;
  for (std::int64_t c = 0; c < n * n; ++c)
    if (in[static_cast<std::size_t>(c)]) cells.push_back({c / n, c % n});
  return cells;
}

std::vector<char> flags_from_pattern(const Pattern& p) {
  std::vector<char> in(static_cast<std::size_t>(p.n() * p.n()), 0);
  for (std::size_t k = 0; k < p.size(); ++k) in[static_cast<std::size_t>(p.cells()[k][0] * p.n() + p.cells()[k][1])] = 1;
  return in;
}

// Traces with no proper sub-trace; hitting these hits everything.
std::vector<std::vector<std::uint32_t>> minimal_traces(const TraceFamily2D& family) {
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return family.cells(a).size() < family.cells(b).size(); });
  const std::size_t cells = static_cast<std::size_t>(family.n() * family.n());
  const std::size_t words = (cells + 63) / 64;
  std::vector<std::vector<std::uint32_t>> kept;
  std::vector<std::vector<std::uint64_t>> kept_masks;
  std::vector<std::vector<std::size_t>> by_first(cells);
  std::vector<std::uint64_t> mask(words);
  for (std::size_t idx : order) {
    const auto t = family.cells(idx);
    std::fill(mask.begin(), mask.end(), 0);
    for (std::uint32_t c : t) mask[c >> 6] |= std::uint64_t{1} << (c & 63);
    bool dominated = false;
    for (std::uint32_t c : t) {
      for (std::size_t k : by_first[c]) {
        const auto& m = kept_masks[k];
        bool subset = true;
        for (std::size_t w = 0; w < words && subset; ++w) subset = (m[w] & ~mask[w]) == 0;
        if (subset) {
          dominated = true;
          break;
        }
      }
      if (dominated) break;
    }
    if (dominated) continue;
    by_first[t.front()].push_back(kept.size());
    kept.emplace_back(t.begin(), t.end());
    kept_masks.push_back(mask);
  }
  return kept;
}

// Clause system for one avoidance vector: hit every minimal trace, and no
// two chosen cells (possibly equal) may sum into the forbidden set.
struct Instance {
  std::int64_t n;
  std::vector<std::vector<std::uint32_t>> hitting;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> conflicts;  // a < b
  std::vector<char> forbidden_cell;                                  // 2s forbidden
};

Instance build_instance(std::int64_t n, const std::vector<std::vector<std::uint32_t>>& hitting, std::int64_t p,
                        std::int64_t q) {
  Instance inst{n, hitting, {}, std::vector<char>(static_cast<std::size_t>(n * n), 0)};
  auto forbidden = [&](std::int64_t sx, std::int64_t sy) {
    for (std::int64_t dx : {0, 1})
      for (std::int64_t ex : {std::int64_t{0}, n})
        if (sx == p - dx - ex)
          for (std::int64_t dy : {0, 1})
            for (std::int64_t ey : {std::int64_t{0}, n})
              if (sy == q - dy - ey) return true;
    return false;
  };
  const std::uint32_t m = static_cast<std::uint32_t>(n * n);
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = a; b < m; ++b) {
      if (!forbidden(a / n + b / n, a % n + b % n)) continue;
      if (a == b)
        inst.forbidden_cell[a] = 1;
      else
        inst.conflicts.emplace_back(a, b);
    }
  return inst;
}

// WalkSAT over hitting clauses (positive literals) and conflict clauses
// (negative pairs). Forbidden cells are fixed to false.
class WalkSat {
 public:
  WalkSat(const Instance& inst, std::vector<char> start, Rng& rng)
      : inst_(inst), in_(std::move(start)), rng_(rng) {
    const std::size_t m = in_.size();
    for (std::size_t c = 0; c < m; ++c)
      if (inst_.forbidden_cell[c]) in_[c] = 0;
    hit_of_.resize(m);
    conf_of_.resize(m);
    for (std::size_t k = 0; k < inst_.hitting.size(); ++k)
      for (std::uint32_t c : inst_.hitting[k]) hit_of_[c].push_back(static_cast<std::uint32_t>(k));
    for (std::size_t k = 0; k < inst_.conflicts.size(); ++k) {
      conf_of_[inst_.conflicts[k].first].push_back(static_cast<std::uint32_t>(k));
      conf_of_[inst_.conflicts[k].second].push_back(static_cast<std::uint32_t>(k));
    }
    hit_count_.assign(inst_.hitting.size(), 0);
    conf_count_.assign(inst_.conflicts.size(), 0);
    for (std::size_t c = 0; c < m; ++c)
      if (in_[c]) {
        for (auto k : hit_of_[c]) ++hit_count_[k];
        for (auto k : conf_of_[c]) ++conf_count_[k];
      }
    pos_.assign(inst_.hitting.size() + inst_.conflicts.size(), npos);
    for (std::size_t k = 0; k < hit_count_.size(); ++k)
      if (hit_count_[k] == 0) mark(k);
    for (std::size_t k = 0; k < conf_count_.size(); ++k)
      if (conf_count_[k] == 2) mark(hit_count_.size() + k);
  }

  // Returns the number of flips used; satisfied() tells whether it worked.
  std::uint64_t run(std::uint64_t budget) {
    std::uint64_t flips = 0;
    while (!unsat_.empty() && flips < budget) {
      const std::size_t clause = unsat_[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(unsat_.size()) - 1))];
      std::vector<std::uint32_t> vars;
      if (clause < hit_count_.size()) {
        for (std::uint32_t c : inst_.hitting[clause])
          if (!inst_.forbidden_cell[c]) vars.push_back(c);
        if (vars.empty()) return flips;  // unsatisfiable clause
      } else {
        const auto& [a, b] = inst_.conflicts[clause - hit_count_.size()];
        vars = {a, b};
      }
      std::uint32_t pick = vars.front();
      if (rng_.chance(35, 100)) {
        pick = vars[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(vars.size()) - 1))];
      } else {
        int best = 1 << 30;
        for (std::uint32_t v : vars) {
          const int b = break_count(v);
          if (b < best || (b == best && rng_.coin())) best = b, pick = v;
        }
      }
      flip(pick);
      ++flips;
    }
    return flips;
  }

  bool satisfied() const { return unsat_.empty(); }
  const std::vector<char>& assignment() const { return in_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void mark(std::size_t k) {
    if (pos_[k] != npos) return;
    pos_[k] = unsat_.size();
    unsat_.push_back(k);
  }
  void unmark(std::size_t k) {
    if (pos_[k] == npos) return;
    const std::size_t last = unsat_.back();
    unsat_[pos_[k]] = last;
    pos_[last] = pos_[k];
    unsat_.pop_back();
    pos_[k] = npos;
  }

  int break_count(std::uint32_t v) const {
    int b = 0;
    if (in_[v]) {
      for (auto k : hit_of_[v]) b += hit_count_[k] == 1;
    } else {
      for (auto k : conf_of_[v]) b += conf_count_[k] == 1;
    }
    return b;
  }

  void flip(std::uint32_t v) {
    const std::size_t off = hit_count_.size();
    if (in_[v]) {
      in_[v] = 0;
      for (auto k : hit_of_[v])
        if (--hit_count_[k] == 0) mark(k);
      for (auto k : conf_of_[v])
        if (conf_count_[k]-- == 2) unmark(off + k);
    } else {
      in_[v] = 1;
      for (auto k : hit_of_[v])
        if (hit_count_[k]++ == 0) unmark(k);
      for (auto k : conf_of_[v])
        if (++conf_count_[k] == 2) mark(off + k);
    }
  }

  const Instance& inst_;
  std::vector<char> in_;
  Rng& rng_;
  std::vector<std::vector<std::uint32_t>> hit_of_, conf_of_;
  std::vector<int> hit_count_, conf_count_;
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> unsat_;
};

bool hits_all(const std::vector<std::vector<std::uint32_t>>& hitting, const std::vector<char>& in) {
  return std::all_of(hitting.begin(), hitting.end(), [&](const auto& t) {
    return std::any_of(t.begin(), t.end(), [&](std::uint32_t c) { return in[c] != 0; });
  });
}

// Drops cells while every trace stays hit, then tries swaps that free a
// further removal. Removing cells never creates a sum conflict; an added
// cell must not conflict with the rest.
std::uint64_t shrink(const Instance* inst, const std::vector<std::vector<std::uint32_t>>& hitting,
                     std::vector<char>& in, Rng& rng, std::uint64_t budget) {
  const std::size_t m = in.size();
  std::vector<std::vector<std::uint32_t>> hit_of(m);
  for (std::size_t k = 0; k < hitting.size(); ++k)
    for (std::uint32_t c : hitting[k]) hit_of[c].push_back(static_cast<std::uint32_t>(k));
  std::vector<int> count(hitting.size(), 0);
  for (std::size_t c = 0; c < m; ++c)
    if (in[c])
      for (auto k : hit_of[c]) ++count[k];
  std::vector<std::vector<std::uint32_t>> partners(m);
  if (inst)
    for (const auto& [a, b] : inst->conflicts) partners[a].push_back(b), partners[b].push_back(a);

  auto removable = [&](std::size_t c) {
    return std::all_of(hit_of[c].begin(), hit_of[c].end(), [&](std::uint32_t k) { return count[k] >= 2; });
  };
  auto remove = [&](std::size_t c) {
    in[c] = 0;
    for (auto k : hit_of[c]) --count[k];
  };
  auto add = [&](std::size_t c) {
    in[c] = 1;
    for (auto k : hit_of[c]) ++count[k];
  };
  auto addable = [&](std::size_t c) {
    if (in[c] || (inst && inst->forbidden_cell[c])) return false;
    return std::none_of(partners[c].begin(), partners[c].end(), [&](std::uint32_t o) { return in[o] != 0; });
  };
  auto remove_pass = [&]() {
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < m; ++c)
      if (in[c]) order.push_back(c);
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
    bool any = false;
    for (std::size_t c : order)
      if (removable(c)) remove(c), any = true;
    return any;
  };

  std::uint64_t moves = 0;
  remove_pass();
  bool improved = true;
  while (improved && moves < budget) {
    improved = false;
    for (std::size_t a = 0; a < m && !improved && moves < budget; ++a) {
      if (!in[a]) continue;
      for (std::size_t b = 0; b < m && !improved && moves < budget; ++b) {
        if (!addable(b)) continue;
        ++moves;
        add(b);
        if (removable(a)) {
          remove(a);
          // Keep the swap only if it frees another cell.
          std::vector<std::size_t> freed;
          for (std::size_t c = 0; c < m; ++c)
            if (in[c] && c != b && removable(c)) freed.push_back(c);
          if (!freed.empty()) {
            remove(freed.front());
            remove_pass();
            improved = true;
            break;
          }
          add(a);
        }
        remove(b);
      }
    }
  }
  return moves;
}

std::int64_t candidate_distance(std::int64_t n, std::int64_t p, std::int64_t q) {
  const std::int64_t dx = 10 * (2 * p + 1) - 29 * n, dy = 10 * (2 * q + 1) - 31 * n;
  return dx * dx + dy * dy;
}

}  // namespace

std::vector<std::pair<std::int64_t, std::int64_t>> avoidance_candidates(std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t p = n; p < 2 * n; ++p)
    for (std::int64_t q = n; q < 2 * n; ++q) out.emplace_back(p, q);
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return candidate_distance(n, a.first, a.second) < candidate_distance(n, b.first, b.second);
  });
  return out;
}

Pattern greedy_blocking_cover(const TraceFamily2D& family) {
  const std::int64_t n = family.n();
  const std::size_t m = static_cast<std::size_t>(n * n);
  std::vector<std::vector<std::uint32_t>> traces_of(m);
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::uint32_t c : family.cells(i)) traces_of[c].push_back(static_cast<std::uint32_t>(i));
  std::vector<char> covered(family.size(), 0), in(m, 0);
  std::vector<std::size_t> gain(m);
  for (std::size_t c = 0; c < m; ++c) gain[c] = traces_of[c].size();
  std::size_t remaining = family.size();
  while (remaining > 0) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < m; ++c)
      if (gain[c] > gain[best]) best = c;
    in[best] = 1;
    for (auto t : traces_of[best]) {
      if (covered[t]) continue;
      covered[t] = 1;
      --remaining;
      for (std::uint32_t c : family.cells(t)) --gain[c];
    }
  }
  return Pattern(n, cells_from_flags(n, in));
}

Pattern greedy_blocking_cover(std::int64_t n) { return greedy_blocking_cover(enumerate_traces_2d(n)); }

LocalSearchResult local_search_run(const Pattern& start, const TraceFamily2D& family, std::uint64_t budget,
                                   std::uint64_t seed) {
  const std::int64_t n = start.n();
  if (family.n() != n) throw Error("trace family resolution mismatch");
  const auto hitting = minimal_traces(family);
  Rng rng(seed);
  const std::vector<char> start_flags = flags_from_pattern(start);
  std::uint64_t used = 0;

  // Already feasible: only shrink under its avoidance vector.
  if (hits_all(hitting, start_flags))
    if (auto w = verify_sumset_avoidance(start)) {
      const Instance inst = build_instance(n, hitting, w->p, w->q);
      std::vector<char> in = start_flags;
      used += shrink(&inst, hitting, in, rng, budget);
      return {Pattern(n, cells_from_flags(n, in)), true, std::make_pair(w->p, w->q), used};
    }

  const auto candidates = avoidance_candidates(n);
  const std::uint64_t share = std::max<std::uint64_t>(budget / candidates.size(), std::min<std::uint64_t>(budget, 50000));
  for (std::size_t k = 0; k < candidates.size() && used < budget; ++k) {
    const auto [p, q] = candidates[k];
    const Instance inst = build_instance(n, hitting, p, q);
    Rng local(derive_seed(seed, k));
    WalkSat ws(inst, start_flags, local);
    used += ws.run(std::min(share, budget - used));
    if (!ws.satisfied()) continue;
    std::vector<char> in = ws.assignment();
    used += shrink(&inst, hitting, in, local, budget > used ? budget - used : 0);
    return {Pattern(n, cells_from_flags(n, in)), true, std::make_pair(p, q), used};
  }

  // No feasible pattern: report the smallest blocking set we can make from
  // the start.
  std::vector<char> in = start_flags;
  if (!hits_all(hitting, in)) in = flags_from_pattern(greedy_blocking_cover(family));
  shrink(nullptr, hitting, in, rng, 0);
  return {Pattern(n, cells_from_flags(n, in)), false, std::nullopt, used};
}

LocalSearchResult local_search_run(const Pattern& start, std::uint64_t budget, std::uint64_t seed) {
  return local_search_run(start, enumerate_traces_2d(start.n()), budget, seed);
}

Pattern local_search(const Pattern& start, std::uint64_t budget, std::uint64_t seed) {
  return local_search_run(start, budget, seed).pattern;
}

std::vector<Pattern> exhaustive_search(std::int64_t n) {
  if (n < 1) throw Error("resolution must be >= 1");
  if (n > 3) throw Error("resolution too large");
  const auto family = enumerate_traces_2d(n);
  const std::size_t m = static_cast<std::size_t>(n * n);
  std::vector<std::uint32_t> masks;
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::uint32_t mask = 0;
    for (std::uint32_t c : family.cells(i)) mask |= 1u << c;
    masks.push_back(mask);
  }
  std::vector<std::uint32_t> feasible;
  for (std::uint32_t s = 1; s < (1u << m); ++s) {
    if (!std::all_of(masks.begin(), masks.end(), [&](std::uint32_t t) { return (t & s) != 0; })) continue;
    std::vector<char> in(m);
    for (std::size_t c = 0; c < m; ++c) in[c] = (s >> c) & 1u;
    if (verify_sumset_avoidance(Pattern(n, cells_from_flags(n, in)))) feasible.push_back(s);
  }
  std::vector<Pattern> out;
  for (std::uint32_t s : feasible) {
    const bool minimal = std::none_of(feasible.begin(), feasible.end(),
                                      [&](std::uint32_t o) { return o != s && (o & s) == o; });
    if (!minimal) continue;
    std::vector<char> in(m);
    for (std::size_t c = 0; c < m; ++c) in[c] = (s >> c) & 1u;
    out.emplace_back(n, cells_from_flags(n, in));
  }
  return out;
}

SearchOutcome search_pattern(std::int64_t n, std::uint64_t budget, std::uint64_t seed) {
  if (n < 1) throw Error("resolution must be >= 1");
  const auto family = enumerate_traces_2d(n);
  const Pattern greedy = greedy_blocking_cover(family);
  if (n <= 3) {
    const auto all = exhaustive_search(n);
    if (all.empty())
      return SearchFailure{"no avoidance vector exists: exhaustive enumeration of all " +
                               std::to_string(std::uint64_t{1} << (n * n)) +
                               " subsets finds no pattern that both blocks and avoids",
                           greedy, true};
  }
  const auto result = local_search_run(greedy, family, budget, seed);
  if (!result.feasible)
    return SearchFailure{"budget exhausted: no blocking pattern with an avoidance vector found", result.pattern, false};
  try {
    return make_certificate(result.pattern, family, result.vector);
  } catch (const CertificateError& e) {
    return SearchFailure{e.what(), result.pattern, false};
  }
}

}  // namespace fullproj
