#include <cmath>
#include <nlohmann/json.hpp>

#include "fullproj/construct.hpp"
#include "fullproj/sampling.hpp"
#include "fullproj/trace.hpp"

namespace fullproj {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

double factorial(int d) {
  double f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

}  // namespace

double strong_failure_bound_log10(int d, std::int64_t a_n, std::int64_t a_next) {
  const double r = static_cast<double>(a_next) / static_cast<double>(a_n);
  const double q = 1.0 - std::pow(2.0, -(std::pow(2.0, d) + 1));
  return d * std::log10(static_cast<double>(a_n)) + std::log10(d) +
         2.5 * factorial(d) * std::log10(8.0 * d * r) + (r / (8.0 * d) - 1) * std::log10(q);
}

double full_failure_bound_log10(int d, std::int64_t a_n, std::int64_t a_next) {
  const double q = 1.0 - std::pow(2.0, -(std::pow(3.0, d) + 1));
  const double reps = std::floor(static_cast<double>(a_next) / (60.0 * std::sqrt(d) * static_cast<double>(a_n)));
  return 2.5 * factorial(d) * std::log10(2.0 * static_cast<double>(a_next)) + reps * std::log10(q);
}

Rational full_selection_probability(int d) {
  std::int64_t e = 1;
  for (int i = 0; i < d; ++i) e *= 3;
  return Rational(1, std::int64_t{1} << (e + 1));
}

ConstructionState initial_state(int d, std::int64_t a0) {
  if (d < 1 || a0 < 1) throw Error("invalid initial state");
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) total *= a0;
  std::vector<std::int64_t> flat;
  flat.reserve(static_cast<std::size_t>(total * d));
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rest = idx;
    std::vector<std::int64_t> t(static_cast<std::size_t>(d));
    for (int i = d - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = rest % a0;
      rest /= a0;
    }
    flat.insert(flat.end(), t.begin(), t.end());
  }
  ConstructionState s{d, 0, a0, CellSet::from_flat(d, a0, std::move(flat)), {}};
  StepRecord r;
  r.kind = "initial";
  r.a = a0;
  r.cells = s.cells.size();
  r.nested = r.avoids = r.covers = r.separated = true;
  s.history.push_back(r);
  return s;
}

std::string ConstructionState::to_json() const {
  nlohmann::ordered_json j;
  j["d"] = d;
  j["stage"] = stage;
  j["a"] = a;
  j["cells"] = cells.size();
  j["steps"] = nlohmann::ordered_json::array();
  for (const auto& r : history) {
    nlohmann::ordered_json s;
    s["kind"] = r.kind;
    s["a"] = r.a;
    s["cells"] = r.cells;
    s["seed"] = r.seed;
    s["attempts"] = r.attempts;
    if (r.x) {
      std::vector<std::string> xs;
      for (const auto& c : *r.x) xs.push_back(c.to_string());
      s["x"] = xs;
    }
    if (r.target) s["target"] = *r.target;
    if (r.kind == "full") {
      s["sCells"] = r.s_cells;
      s["tCells"] = r.t_cells;
    }
    s["maxPartners"] = r.max_partners;
    s["verified"] = {{"nested", r.nested}, {"avoids", r.avoids}, {"covers", r.covers}, {"separated", r.separated}};
    s["failureBoundLog10"] = r.bound_log10;
    j["steps"].push_back(s);
  }
  return j.dump(2) + "\n";
}

ConstructionState step_strong(const ConstructionState& state, std::int64_t a_next, const Cell& basis,
                              std::uint64_t seed, int retry_cap) {
  if (state.d != 2) throw Error("strong step is verified in d = 2 only");
  if (a_next < state.a || a_next % state.a != 0) throw Error("a_next must be a multiple of a_n");
  if (basis.dim() != 2 || !basis.in_unit_cube()) throw Error("basis cell must be a cell of the unit square");
  const std::int64_t a = state.a, r = a_next / a;

  // x = m / P with P prime and larger than 2 a_next a_n, so 2 a_next x is
  // never an integer and each C has at most 4 partners.
  std::int64_t P = std::max<std::int64_t>(2 * a_next * a, 20 * basis.n) + 1;
  while (!is_prime(P)) ++P;
  Rng xr(derive_seed(seed, 0));
  std::int64_t m[2];
  RationalVector x;
  for (int i = 0; i < 2; ++i) {
    const std::int64_t lo = basis.t[static_cast<std::size_t>(i)] * P / basis.n + 1;
    const std::int64_t hi = ((basis.t[static_cast<std::size_t>(i)] + 1) * P - 1) / basis.n;
    m[i] = xr.uniform(lo, hi);
    x.push_back(Rational(m[i], P));
  }
  std::int64_t fl[2];
  for (int i = 0; i < 2; ++i) fl[i] = static_cast<std::int64_t>(static_cast<__int128>(2) * m[i] * a_next / P);

  const std::size_t side = static_cast<std::size_t>(a_next);
  std::vector<char> in_t(side * side, 0);
  std::vector<std::int64_t> fine;
  for (std::size_t i = 0; i < state.cells.size(); ++i)
    for (std::int64_t u = 0; u < r; ++u)
      for (std::int64_t v = 0; v < r; ++v) {
        const std::int64_t cx = state.cells[i][0] * r + u, cy = state.cells[i][1] * r + v;
        in_t[static_cast<std::size_t>(cx) * side + static_cast<std::size_t>(cy)] = 1;
        fine.push_back(cx);
        fine.push_back(cy);
      }
  auto partners = [&](std::int64_t cx, std::int64_t cy) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t ox : {fl[0] - cx - 1, fl[0] - cx})
      for (std::int64_t oy : {fl[1] - cy - 1, fl[1] - cy})
        if (ox >= 0 && oy >= 0 && ox < a_next && oy < a_next &&
            in_t[static_cast<std::size_t>(ox) * side + static_cast<std::size_t>(oy)])
          out.emplace_back(ox, oy);
    return out;
  };

  StepRecord rec;
  rec.kind = "strong";
  rec.a = a_next;
  rec.seed = seed;
  rec.x = x;
  rec.bound_log10 = strong_failure_bound_log10(2, a, a_next);
  for (std::size_t i = 0; i < fine.size(); i += 2)
    rec.max_partners = std::max(rec.max_partners, partners(fine[i], fine[i + 1]).size());

  for (int attempt = 1; attempt <= retry_cap; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<char> black(side * side, 0);
    for (std::size_t i = 0; i < fine.size(); i += 2)
      black[static_cast<std::size_t>(fine[i]) * side + static_cast<std::size_t>(fine[i + 1])] = rng.coin();
    std::vector<IntVector> chosen;
    for (std::size_t i = 0; i < fine.size(); i += 2) {
      const std::int64_t cx = fine[i], cy = fine[i + 1];
      if (!black[static_cast<std::size_t>(cx) * side + static_cast<std::size_t>(cy)]) continue;
      bool clash = false;
      for (const auto& [ox, oy] : partners(cx, cy))
        clash = clash || black[static_cast<std::size_t>(ox) * side + static_cast<std::size_t>(oy)];
      if (!clash) chosen.push_back({cx, cy});
    }
    if (chosen.empty()) continue;
    CellSet next(2, a_next, chosen);

    // x stays out of (K+K)/2: replayed over all pairs with integers.
    bool avoids = true;
    for (std::size_t p = 0; p < chosen.size() && avoids; ++p)
      for (std::size_t q = p; q < chosen.size() && avoids; ++q) {
        bool inside = true;
        for (int i = 0; i < 2 && inside; ++i) {
          const __int128 s = chosen[p][static_cast<std::size_t>(i)] + chosen[q][static_cast<std::size_t>(i)];
          const __int128 X = static_cast<__int128>(2) * m[i] * a_next;
          inside = s * P <= X && X <= (s + 2) * P;
        }
        avoids = !inside;
      }
    bool nested = true;
    for (const auto& c : chosen) nested = nested && state.cells.contains(IntVector{c[0] / r, c[1] / r});
    if (!avoids || !nested) throw Error("internal: selection rule violated");
    if (find_line_without_strong_cell(next)) continue;

    rec.attempts = attempt;
    rec.cells = next.size();
    rec.nested = nested;
    rec.avoids = avoids;
    rec.covers = true;
    rec.separated = true;
    ConstructionState out{2, state.stage + 1, a_next, std::move(next), state.history};
    out.history.push_back(rec);
    return out;
  }
  throw RetryCapExceeded("retry cap exceeded: " + std::to_string(retry_cap) +
                             " colorings failed the strong-coverage certificate (failure-bound log10 " +
                             std::to_string(rec.bound_log10) + ")",
                         retry_cap, rec.bound_log10);
}

}  // namespace fullproj
