// Acceptance suite. Prints one PASS/FAIL line per criterion; `--only N`
// runs a single criterion so each can be its own ctest entry.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "fullproj/blocking.hpp"
#include "fullproj/classify.hpp"
#include "fullproj/construct.hpp"
#include "fullproj/ifs.hpp"
#include "fullproj/sampling.hpp"
#include "fullproj/search.hpp"
#include "fullproj/trace.hpp"

using namespace fullproj;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::vector<std::string> failures;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    pass = false;
    if (failures.size() < 4) failures.push_back(what);
  }

  std::string summary() const {
    std::string s = note.str();
    for (const auto& f : failures) s += (s.empty() ? "" : "; ") + f;
    return s;
  }
};

std::int64_t totient(std::int64_t m) {
  std::int64_t c = 0;
  for (std::int64_t i = 1; i <= m; ++i) c += std::gcd(i, m) == 1;
  return c;
}

// Shared by criteria 5 through 9: the certified pattern is searched once.
const Certificate* certified() {
  static std::optional<Certificate> cert;
  static bool done = false;
  if (!done) {
    done = true;
    // Nothing below 9 was found feasible; starting there saves the budget.
    for (std::int64_t n = 9; n <= 16 && !cert; ++n) {
      auto outcome = search_pattern(n, 2000000, 1);
      if (auto* c = std::get_if<Certificate>(&outcome)) cert = std::move(*c);
    }
  }
  return cert ? &*cert : nullptr;
}

void balanced_words(Outcome& o) {
  const auto t0 = Clock::now();
  for (int m = 1; m <= 16; ++m) {
    std::int64_t formula = 1;
    for (int i = 1; i <= m; ++i) formula += (m + 1 - i) * totient(i);
    const std::int64_t brute = balanced_brute(m);
    o.require(brute == formula, "m=" + std::to_string(m) + " brute " + std::to_string(brute) + " formula " +
                                    std::to_string(formula));
    o.require(count_balanced_words(m) == formula, "closed form mismatch at m=" + std::to_string(m));
  }
  const double s = seconds_since(t0);
  o.note << "m<=16, " << s << "s";
  o.require(s < 10, "runtime over 10s");
}

void trace_enumeration(Outcome& o) {
  const auto t0 = Clock::now();
  const std::int64_t frozen[] = {1, 13, 88, 272, 668, 1380};
  std::size_t missing = 0, lines = 0;
  for (std::int64_t n = 1; n <= 6; ++n) {
    const auto family = enumerate_traces_2d(n);
    o.require(static_cast<std::int64_t>(family.size()) == frozen[n - 1], "count drift at n=" + std::to_string(n));
    std::int64_t bound = 1;
    for (int i = 0; i < 5; ++i) bound *= 2 * n;
    o.require(static_cast<std::int64_t>(family.size()) <= bound, "(2n)^5 bound at n=" + std::to_string(n));
    Rng rng(derive_seed(kDefaultSeed, static_cast<std::uint64_t>(n)));
    for (int i = 0; i < 100000; ++i, ++lines)
      if (!family.contains(compute_trace(random_line_through_cube(rng, 2, n), n))) ++missing;
  }
  o.require(missing == 0, std::to_string(missing) + " sampled traces missing");
  const double s = seconds_since(t0);
  o.note << lines << " lines, counts 1/13/88/272/668/1380, " << s << "s";
  o.require(s < 120, "runtime over 2min");
}

void projection_determination(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t pairs = 0, bad = 0;
  for (std::int64_t n = 1; n <= 3; ++n) {
    const auto r = projection_determination_report(n, 10000, derive_seed(kDefaultSeed, 30 + n));
    pairs += r.pairs;
    bad += r.counterexamples;
  }
  o.require(bad == 0, std::to_string(bad) + " counterexamples");
  const double s = seconds_since(t0);
  o.note << pairs << " pairs in d=3, n<=3, " << s << "s";
  o.require(s < 60, "runtime over 1min");
}

void reduced_trace_contract(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (std::int64_t n : {4, 8, 12}) {
    Rng rng(derive_seed(kDefaultSeed, 40 + n));
    for (int i = 0; i < 10000; ++i, ++checked) {
      const Line line = random_strong_line(rng, 2, n);
      const auto reduced = reduced_strong_trace(line, n);
      const Trace strong = strong_trace(line, n);
      bool subset = true;
      for (std::size_t k = 0; k < reduced.cells.size(); ++k) subset = subset && strong.cells().contains(reduced.cells[k]);
      o.require(subset, "slt' not inside slt: " + to_string(line));
      // n/4 - 2 <= distinct, in integers.
      o.require(4 * static_cast<std::int64_t>(max_distinct_projection(reduced.cells)) >= n - 8,
                "too few distinct projections: " + to_string(line));
      if (!o.pass) return;
    }
  }
  std::size_t range_sizes[3] = {};
  for (std::int64_t n = 1; n <= 3; ++n) {
    const auto range = reduced_trace_range_2d(n);
    range_sizes[n - 1] = range.size();
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(16 * n), 5);
    o.require(mpz_class(static_cast<unsigned long>(range.size())) <= 2 * bound, "range too large at n=" + std::to_string(n));
  }
  const double s = seconds_since(t0);
  o.note << checked << " lines, range sizes n=1..3: " << range_sizes[0] << "/" << range_sizes[1] << "/"
         << range_sizes[2] << ", " << s << "s";
  o.require(s < 120, "runtime over 2min");
}

void pattern_rediscovery(Outcome& o) {
  const auto t0 = Clock::now();
  const auto cand = avoidance_candidates(10);
  o.require(std::find(cand.begin(), cand.end(), std::pair<std::int64_t, std::int64_t>{14, 15}) != cand.end(),
            "(14,15) not tested at n=10");
  for (std::int64_t n : {1, 2}) o.require(exhaustive_search(n).empty(), "exhaustive search found a pattern");
  const Certificate* cert = certified();
  o.require(cert != nullptr, "no certificate for n <= 16");
  if (!cert) return;
  const Pattern& t = cert->pattern;
  o.require(verify_blocking_by_traces(t), "trace-hitting replay failed");
  o.require(verify_blocking_by_tangents(t), "tangent replay failed");
  o.require(avoidance_holds(t, cert->avoidance.p, cert->avoidance.q), "avoidance replay failed");
  const double s = seconds_since(t0);
  o.note << "n=" << t.n() << " |T|=" << t.size() << " v=(" << cert->avoidance.p << "," << cert->avoidance.q << "), "
         << s << "s";
  o.require(s < 600, "runtime over 10min");
}

void selfsimilar_checks(Outcome& o) {
  const Certificate* cert = certified();
  o.require(cert != nullptr, "no certificate");
  if (!cert) return;
  const IfsSystem sys = IfsSystem::from_pattern(cert->pattern);
  o.require(open_set_condition(sys), "open set condition");
  o.require(sumset_lattice_avoidance(sys, cert->avoidance, 3), "sumset lattice avoidance at depth 3");
  std::size_t expect = 1;
  for (int i = 1; i <= 3; ++i) {
    expect *= cert->pattern.size();
    o.require(iterate(sys, i).size() == expect, "|K_" + std::to_string(i) + "| != |T|^" + std::to_string(i));
  }
  o.note << "depth 3, |K_3|=" << expect;
}

void lifts_and_classification(Outcome& o) {
  const Certificate* cert = certified();
  o.require(cert != nullptr, "no certificate");
  if (!cert) return;
  const IfsSystem lifted = selfsimilar_lift(cert->pattern, 3);
  o.require(lifted.maps().size() == cert->pattern.size() * static_cast<std::size_t>(cert->pattern.n()),
            "lifted map count");
  o.require(open_set_condition(lifted), "lifted open set condition");
  bool rejected = false;
  try {
    desklegs_lift(CellSet(2, 3, {{1, 1}, {2, 0}}));
  } catch (const Error&) {
    rejected = true;
  }
  o.require(rejected, "desklegs accepted an origin-free set");

  for (int d = 2; d <= 12; ++d)
    for (int k = 1; k < d; ++k)
      o.require((classify(2, k, d).verdict == Verdict::Exists) == (2 * k >= d),
                "(2," + std::to_string(k) + "," + std::to_string(d) + ")");
  for (int d = 2; d <= 12; ++d) {
    o.require(classify(d, d - 1, d).verdict == Verdict::Exists, "(d,d-1,d) at d=" + std::to_string(d));
    if (d >= 3) o.require(classify(d - 1, d - 1, d).verdict == Verdict::Exists, "(d-1,d-1,d) at d=" + std::to_string(d));
  }
  o.require(classify(3, 1, 2).verdict == Verdict::Open, "(3,1,2) not Open");
  o.require(classify(3, 3, 5).verdict == Verdict::Open, "(3,3,5) not Open");
  // Independent closure of the bases under the four rules, without the
  // nonexistence bound, so that an overlap would be visible.
  std::set<std::tuple<int, int, int>> exists;
  std::vector<std::tuple<int, int, int>> work;
  for (int d = 2; d <= 12; ++d)
    for (int k = 1; k < d; ++k)
      if (2 * k >= d) work.emplace_back(2, k, d);
  while (!work.empty()) {
    const auto [l, k, d] = work.back();
    work.pop_back();
    if (l < 2 || k < 1 || k >= d || d > 12 || l > 13 || !exists.emplace(l, k, d).second) continue;
    work.emplace_back(l - 1, k, d);
    work.emplace_back(l, k + 1, d);
    work.emplace_back(l, k + 1, d + 1);
    if (k == d - 1) work.emplace_back(l + 1, d, d + 1);
  }
  std::size_t swept = 0, overlap = 0;
  for (int l = 2; l <= 8; ++l)
    for (int d = 2; d <= 12; ++d)
      for (int k = 1; k < d; ++k, ++swept) {
        const auto r = classify(l, k, d);
        const bool nonex = l * k <= (l - 1) * (d - 1);
        const bool derived = exists.count({l, k, d}) > 0;
        const std::string at = "(" + std::to_string(l) + "," + std::to_string(k) + "," + std::to_string(d) + ")";
        overlap += nonex && derived;
        o.require((r.verdict == Verdict::NotExists) == nonex, "NotExists rule at " + at);
        o.require(nonex || (r.verdict == Verdict::Exists) == derived, "Exists closure disagrees at " + at);
        if (r.verdict != Verdict::Open) o.require(replay_derivation(r, {l, k, d}), "derivation does not replay at " + at);
      }
  o.require(overlap == 0, std::to_string(overlap) + " triples both derivable and excluded");
  o.note << swept << " triples swept";
}

void randomized_constructions(Outcome& o) {
  const auto t0 = Clock::now();
  try {
    const auto s1 = step_strong(initial_state(2, 1), 40, Cell{4, {0, 0}}, kDefaultSeed);
    const auto& r = s1.history.back();
    o.require(r.nested && r.avoids && r.covers, "strong round invariants");
    o.require(r.max_partners <= 4, "|E_C| > 2^d in the strong round");
    o.note << "strong a=40 ok (" << r.attempts << " attempts, " << s1.cells.size() << " cells), ";
  } catch (const RetryCapExceeded& e) {
    o.require(false, std::string("strong round: ") + e.what());
  }
  try {
    const auto s1 = step_full(initial_state(2, 20), 400, kDefaultSeed);
    const auto& r = s1.history.back();
    o.require(r.nested && r.separated && r.avoids && r.covers, "full round invariants");
    o.require(r.max_partners <= 9, "|E_C| > 3^d in the full round");
    o.note << "full a=400 ok (" << r.attempts << " attempts)";
  } catch (const RetryCapExceeded& e) {
    // Separation, pair exclusion and partner bounds are asserted inside
    // every attempt; what runs out is coverage.
    o.require(false, std::string("full round a=400: ") + e.what());
  }
  // Any per-attempt invariant violation would have thrown an internal error
  // instead of RetryCapExceeded.
  o.note << (o.note.tellp() > 0 ? ", " : "") << "per-attempt invariants held, " << seconds_since(t0) << "s";
}

void genericity(Outcome& o) {
  const Certificate* cert = certified();
  o.require(cert != nullptr, "no certificate");
  if (!cert) return;
  Rng rng(derive_seed(kDefaultSeed, 90));
  std::size_t inputs = 0;
  for (; inputs < 20; ++inputs) {
    const int d = 2;
    const std::int64_t m = rng.uniform(1, 6);
    std::vector<IntVector> cells;
    while (cells.empty())
      for (std::int64_t i = 0; i < m; ++i)
        for (std::int64_t j = 0; j < m; ++j)
          if (rng.chance(1, 3)) cells.push_back({i, j});
    const CellSet k(d, m, cells);
    const std::int64_t n = cert->pattern.n();
    const CellSet out = generic_refine(k, cert->pattern);
    // Independently of the assertion inside generic_refine.
    const auto b = hausdorff_bounds(out, k, Rational(1, 1000000));
    o.require(b.upper <= Rational(4 * d, n * n), "d_H^2 above 4d/n^2 on input " + std::to_string(inputs));
  }
  o.note << inputs << " inputs, bound 8/" << cert->pattern.n() * cert->pattern.n();
}

void oracle_equivalence(Outcome& o) {
  Rng rng(derive_seed(kDefaultSeed, 100));
  const auto family = enumerate_traces_2d(5);
  std::size_t disagree = 0, blocking = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<IntVector> cells;
    const auto density = static_cast<std::uint64_t>(rng.uniform(2, 9));
    for (std::int64_t a = 0; a < 5; ++a)
      for (std::int64_t b = 0; b < 5; ++b)
        if (rng.chance(density, 10)) cells.push_back({a, b});
    const Pattern p(5, cells);
    const bool by_traces = verify_blocking_by_traces(p, family);
    blocking += by_traces;
    disagree += by_traces != verify_blocking_by_tangents(p);
  }
  o.require(disagree == 0, std::to_string(disagree) + " disagreements");
  o.note << "500 patterns, " << blocking << " blocking";
}

struct Criterion {
  const char* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"balanced-word count law", balanced_words},
      {"trace enumeration soundness and frozen counts", trace_enumeration},
      {"projection determination in d=3", projection_determination},
      {"reduced strong trace contract", reduced_trace_contract},
      {"pattern rediscovery", pattern_rediscovery},
      {"self-similar checks", selfsimilar_checks},
      {"lifts and classification", lifts_and_classification},
      {"randomized construction rounds", randomized_constructions},
      {"genericity step bound", genericity},
      {"blocking oracle equivalence", oracle_equivalence},
  };
  int only = 0;
  if (argc == 3 && std::string(argv[1]) == "--only") only = std::atoi(argv[2]);
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "usage: acceptance [--only N]\n";
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("threw: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].name << " (" << o.summary() << ")"
              << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
