#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fullproj/blocking.hpp"
#include "fullproj/classify.hpp"
#include "fullproj/construct.hpp"
#include "fullproj/ifs.hpp"
#include "fullproj/sampling.hpp"
#include "fullproj/search.hpp"
#include "fullproj/trace.hpp"

using namespace fullproj;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

// Bad input files are usage errors, not semantic failures.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Certificate load_certificate(const std::string& path) {
  try {
    return Certificate::from_json(read_file(path));
  } catch (const CertificateFormatError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string power_string(std::int64_t base, int e) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return v.get_str();
}

struct TracesOpts {
  std::int64_t n = 0;
  int d = 2;
  bool count_only = false;
  std::string out;
};

int run_traces(const TracesOpts& o) {
  if (o.d != 2) throw UsageError("traces: only --d 2 is enumerated");
  const auto family = enumerate_traces_2d(o.n);
  std::cout << family.size() << " (bound " << power_string(2 * o.n, 5) << ")\n";
  if (!o.count_only && !o.out.empty()) write_output(o.out, family.to_json());
  return kOk;
}

struct SearchOpts {
  std::int64_t n = 0;
  std::uint64_t budget = 1000000;
  std::uint64_t seed = 1;
  std::string cert;
  std::string pattern_out;
};

int run_search(const SearchOpts& o) {
  const auto outcome = search_pattern(o.n, o.budget, o.seed);
  if (const auto* cert = std::get_if<Certificate>(&outcome)) {
    write_output(o.cert, cert->to_json());
    if (!o.pattern_out.empty()) write_output(o.pattern_out, cert->pattern.to_text());
    std::cerr << "certified n=" << o.n << " |T|=" << cert->pattern.size() << " v=(" << cert->avoidance.p << ","
              << cert->avoidance.q << ")\n";
    return kOk;
  }
  const auto& fail = std::get<SearchFailure>(outcome);
  std::cerr << "search failed: " << fail.reason << "\n";
  if (fail.proven_infeasible) std::cerr << "infeasibility proved by exhaustive enumeration of all subsets\n";
  std::cerr << "best blocking pattern (" << fail.best.size() << " cells):\n" << fail.best.to_text();
  return kFailed;
}

int run_verify(const std::string& path) {
  const Certificate cert = load_certificate(path);
  const Pattern& t = cert.pattern;
  bool ok = true;
  auto report = [&](const char* name, bool pass, const std::string& detail = {}) {
    std::cout << (pass ? "PASS " : "FAIL ") << name;
    if (!pass && !detail.empty()) std::cout << ": " << detail;
    std::cout << "\n";
    ok = ok && pass;
  };

  const bool by_traces = verify_blocking_by_traces(t);
  std::string trace_detail;
  if (!by_traces) {
    const auto line = find_avoiding_line(t.cells());
    trace_detail = line ? "avoiding line " + to_string(*line) : "some trace is missed";
  }
  report("blocking (traces)", by_traces, trace_detail);

  const auto gap = find_gap_by_tangents(t);
  report("blocking (tangents)", !gap, gap ? "avoiding line " + to_string(*gap) : "");

  const auto& v = cert.avoidance;
  const bool in_range = v.p >= t.n() && v.p < 2 * t.n() && v.q >= t.n() && v.q < 2 * t.n();
  const bool avoids = in_range && avoidance_holds(t, v.p, v.q);
  std::string av_detail = "v=(" + std::to_string(v.p) + "," + std::to_string(v.q) + ")";
  if (in_range && !avoids) {
    // T+ and T- share a cell; name one.
    const auto w = avoidance_witness(t, v.p, v.q);
    for (const auto& c : w.t_plus) {
      if (std::find(w.t_minus.begin(), w.t_minus.end(), c) == w.t_minus.end()) continue;
      av_detail += " collides at cell (" + std::to_string(c[0]) + "," + std::to_string(c[1]) + ")";
      break;
    }
  }
  report("avoidance", avoids, av_detail);

  const IfsSystem sys = IfsSystem::from_pattern(t);
  report("open set condition", open_set_condition(sys));

  if (in_range) {
    const auto hit = find_sumset_lattice_collision(sys, v.p, v.q, 2);
    std::string detail;
    if (hit) {
      detail = "level " + std::to_string(hit->level) + " sum cell (" + std::to_string(hit->sum_cell[0]) + "," +
               std::to_string(hit->sum_cell[1]) + ")";
    }
    report("sumset lattice avoidance (depth 2)", !hit, detail);
  } else {
    report("sumset lattice avoidance (depth 2)", false, "vector outside [n, 2n-1]^2");
  }
  return ok ? kOk : kFailed;
}

struct RenderOpts {
  std::string cert;
  int depth = 2;
  std::string out;
  std::string fill = SvgStyle{}.fill;
  bool no_frame = false;
  bool merge = false;
};

int run_render(const RenderOpts& o) {
  const Certificate cert = load_certificate(o.cert);
  const IfsSystem sys = IfsSystem::from_pattern(cert.pattern);
  CellSet cells(2, 1);
  try {
    cells = iterate(sys, o.depth);
  } catch (const Error& e) {
    throw UsageError(std::string("render: ") + e.what());
  }
  SvgStyle style;
  style.fill = o.fill;
  style.frame = !o.no_frame;
  style.merge_runs = o.merge;
  write_output(o.out, render_svg(cells, style));
  return kOk;
}

std::string params_string(const Params& p) {
  return "(" + std::to_string(p.l) + "," + std::to_string(p.k) + "," + std::to_string(p.d) + ")";
}

int run_classify(int l, int k, int d, bool json) {
  ClassificationResult r;
  try {
    r = classify(l, k, d);
  } catch (const Error& e) {
    throw UsageError(std::string("classify: ") + e.what());
  }
  if (json) {
    std::cout << r.to_json() << "\n";
    return kOk;
  }
  std::cout << to_string(r.verdict) << "\n";
  for (const auto& step : r.derivation) {
    std::cout << "  " << step.rule << ": ";
    for (std::size_t i = 0; i < step.from.size(); ++i) std::cout << (i ? ", " : "") << params_string(step.from[i]);
    if (!step.from.empty()) std::cout << " -> ";
    std::cout << params_string(step.to) << "  [" << step.citation << "]\n";
  }
  return kOk;
}

struct ConstructOpts {
  std::string mode = "strong";
  int d = 2;
  std::int64_t a0 = 1;
  std::vector<std::int64_t> scales;
  std::uint64_t seed = 1;
  int cap = kDefaultRetryCap;
  std::int64_t basis_n = 4;
  std::vector<std::int64_t> basis;
  std::vector<std::int64_t> target;
  std::string out;
};

int run_construct(const ConstructOpts& o) {
  ConstructionState state = initial_state(o.d, o.a0);
  int code = kOk;
  for (std::size_t i = 0; i < o.scales.size(); ++i) {
    const std::uint64_t seed = derive_seed(o.seed, i);
    try {
      if (o.mode == "strong") {
        IntVector b = o.basis.empty() ? IntVector(static_cast<std::size_t>(o.d), 0) : IntVector(o.basis);
        state = step_strong(state, o.scales[i], Cell{o.basis_n, b}, seed, o.cap);
      } else {
        state = step_full(state, o.scales[i], seed, IntVector(o.target), o.cap);
      }
    } catch (const RetryCapExceeded& e) {
      std::cerr << "round " << i + 1 << " (a=" << o.scales[i] << "): " << e.what() << "\n";
      code = kFailed;
      break;
    }
    std::cerr << "round " << i + 1 << ": a=" << state.a << " cells=" << state.cells.size() << " attempts="
              << state.history.back().attempts << "\n";
  }
  write_output(o.out, state.to_json());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-projection sets with nowhere dense sumsets: traces, search, certificates, constructions"};
  app.require_subcommand(1);

  TracesOpts traces;
  auto* c_traces = app.add_subcommand("traces", "Enumerate line traces in the n x n grid");
  c_traces->add_option("--n", traces.n, "Grid resolution")->required()->check(CLI::Range(1, 64));
  c_traces->add_option("--d", traces.d, "Dimension")->check(CLI::Range(2, 8));
  c_traces->add_flag("--count-only", traces.count_only, "Print only the count");
  c_traces->add_option("--out", traces.out, "Write the sorted trace family as JSON");

  SearchOpts search;
  auto* c_search = app.add_subcommand("search", "Search for a blocking and avoiding pattern");
  c_search->add_option("--n", search.n, "Grid resolution")->required()->check(CLI::Range(1, 32));
  c_search->add_option("--budget", search.budget, "Total local-search moves");
  c_search->add_option("--seed", search.seed, "Random seed");
  c_search->add_option("--cert", search.cert, "Certificate JSON output (default stdout)");
  c_search->add_option("--pattern-out", search.pattern_out, "Also write the pattern as text");

  std::string verify_path;
  auto* c_verify = app.add_subcommand("verify", "Replay every check of a certificate");
  c_verify->add_option("--cert", verify_path, "Certificate JSON")->required();

  RenderOpts render;
  auto* c_render = app.add_subcommand("render", "Draw the depth-i approximation of the attractor as SVG");
  c_render->add_option("--cert", render.cert, "Certificate JSON")->required();
  c_render->add_option("--depth", render.depth, "Iteration depth")->check(CLI::Range(0, 12));
  c_render->add_option("--out", render.out, "SVG output (default stdout)");
  c_render->add_option("--fill", render.fill, "Cell colour");
  c_render->add_flag("--no-frame", render.no_frame, "Omit the unit-square frame");
  c_render->add_flag("--merge-runs", render.merge, "Merge vertical runs of cells into single rects");

  int cl = 2, ck = 1, cd = 2;
  bool cjson = false;
  auto* c_classify = app.add_subcommand("classify", "Existence of (l,k,d)-sets");
  c_classify->add_option("--l", cl, "Sumset order")->required();
  c_classify->add_option("--k", ck, "Flat dimension")->required();
  c_classify->add_option("--d", cd, "Ambient dimension")->required();
  c_classify->add_flag("--json", cjson, "Print the result as JSON");

  ConstructOpts construct;
  auto* c_construct = app.add_subcommand("construct", "Run randomized refinement rounds");
  c_construct->add_option("--mode", construct.mode, "strong or full")
      ->check(CLI::IsMember({"strong", "full"}));
  c_construct->add_option("--d", construct.d, "Dimension")->check(CLI::Range(1, 6));
  c_construct->add_option("--a0", construct.a0, "Initial resolution")->check(CLI::PositiveNumber);
  c_construct->add_option("--scale", construct.scales, "Resolution after each round")->required();
  c_construct->add_option("--seed", construct.seed, "Random seed");
  c_construct->add_option("--cap", construct.cap, "Retry cap per round")->check(CLI::Range(1, 1 << 20));
  c_construct->add_option("--basis-n", construct.basis_n, "Resolution of the basis cell (strong)");
  c_construct->add_option("--basis", construct.basis, "Basis cell coordinates (strong)");
  c_construct->add_option("--target", construct.target, "Coarse target cell (full)");
  c_construct->add_option("--out", construct.out, "State JSON output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*c_traces) return run_traces(traces);
    if (*c_search) return run_search(search);
    if (*c_verify) return run_verify(verify_path);
    if (*c_render) return run_render(render);
    if (*c_classify) return run_classify(cl, ck, cd, cjson);
    if (*c_construct) return run_construct(construct);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
