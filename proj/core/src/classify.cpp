#include "fullproj/classify.hpp"

#include <deque>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <tuple>

#include "fullproj/grid.hpp"

namespace fullproj {

namespace {

using Key = std::tuple<int, int, int>;
Key key(const Params& p) { return {p.l, p.k, p.d}; }

bool nonexistence_bound(const Params& p) { return p.l * p.k <= (p.l - 1) * (p.d - 1); }

const char* kBaseCite = "(2,k,d)-sets exist for 2k >= d: self-similar planar pattern lifted by products with intervals";
const char* kR1Cite = "every (l,k,d)-set contains 0, so jK is contained in lK for j <= l";
const char* kR2Cite = "a set meeting every k-flat meets every (k+1)-flat";
const char* kR3Cite = "K x [0,1] turns an (l,k,d)-set into an (l,k+1,d+1)-set";
const char* kR4Cite = "K x {0} plus corner columns turns an (l,d-1,d)-set into an (l+1,d,d+1)-set";
const char* kBoundCite = "no (l,k,d)-set when k <= (l-1)(d-1)/l: the lower faces fill an open set of lK";

bool valid(const Params& p) { return p.l >= 2 && p.d >= 2 && p.k >= 1 && p.k < p.d; }

// Single-premise rules applied forward from p.
std::vector<DerivationStep> consequences(const Params& p) {
  std::vector<DerivationStep> out;
  if (p.l >= 3) out.push_back({"R1", {p}, {p.l - 1, p.k, p.d}, kR1Cite});
  if (p.k + 1 < p.d) out.push_back({"R2", {p}, {p.l, p.k + 1, p.d}, kR2Cite});
  out.push_back({"R3", {p}, {p.l, p.k + 1, p.d + 1}, kR3Cite});
  if (p.k == p.d - 1) out.push_back({"R4", {p}, {p.l + 1, p.d, p.d + 1}, kR4Cite});
  return out;
}

bool is_base(const Params& p) { return p.l == 2 && valid(p) && 2 * p.k >= p.d; }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Exists: return "Exists";
    case Verdict::NotExists: return "NotExists";
    case Verdict::Open: return "Open";
  }
  return "Open";
}

std::string ClassificationResult::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(verdict);
  j["derivation"] = nlohmann::ordered_json::array();
  for (const auto& s : derivation) {
    nlohmann::ordered_json step;
    step["rule"] = s.rule;
    step["from"] = nlohmann::ordered_json::array();
    for (const auto& f : s.from) step["from"].push_back({f.l, f.k, f.d});
    step["to"] = {s.to.l, s.to.k, s.to.d};
    step["citation"] = s.citation;
    j["derivation"].push_back(step);
  }
  return j.dump(2) + "\n";
}

ClassificationResult classify(int l, int k, int d) {
  const Params target{l, k, d};
  if (!valid(target)) throw Error("parameters must satisfy l >= 2, 0 < k < d, d >= 2");
  if (nonexistence_bound(target)) return {Verdict::NotExists, {{"bound", {}, target, kBoundCite}}};

  // Every rule keeps d or raises it, and l never exceeds d + 1 along a
  // chain that starts at l = 2, so this box contains every relevant fact.
  const int max_d = d, max_l = std::max(l, d + 1);
  std::map<Key, DerivationStep> how;
  std::deque<Params> work;
  for (int dd = 2; dd <= max_d; ++dd)
    for (int kk = 1; kk < dd; ++kk) {
      const Params b{2, kk, dd};
      if (is_base(b)) {
        how.emplace(key(b), DerivationStep{"base", {}, b, kBaseCite});
        work.push_back(b);
      }
    }
  while (!work.empty()) {
    const Params p = work.front();
    work.pop_front();
    for (auto& step : consequences(p)) {
      if (!valid(step.to) || step.to.d > max_d || step.to.l > max_l) continue;
      if (how.emplace(key(step.to), step).second) work.push_back(step.to);
    }
  }
  if (!how.count(key(target))) return {Verdict::Open, {}};

  // Premises before conclusions.
  ClassificationResult result{Verdict::Exists, {}};
  std::set<Key> emitted;
  auto emit = [&](auto&& self, const Params& p) -> void {
    if (!emitted.insert(key(p)).second) return;
    const DerivationStep& s = how.at(key(p));
    for (const auto& f : s.from) self(self, f);
    result.derivation.push_back(s);
  };
  emit(emit, target);
  return result;
}

bool replay_derivation(const ClassificationResult& result, Params target) {
  if (result.verdict == Verdict::Open) return result.derivation.empty();
  if (result.derivation.empty() || !(result.derivation.back().to == target)) return false;
  if (result.verdict == Verdict::NotExists)
    return result.derivation.size() == 1 && result.derivation[0].rule == "bound" && valid(target) &&
           nonexistence_bound(target);
  std::set<Key> known;
  for (const auto& s : result.derivation) {
    if (!valid(s.to) || nonexistence_bound(s.to)) return false;
    if (s.rule == "base") {
      if (!s.from.empty() || !is_base(s.to)) return false;
    } else {
      if (s.from.size() != 1 || !known.count(key(s.from[0]))) return false;
      bool ok = false;
      for (const auto& c : consequences(s.from[0])) ok = ok || (c.rule == s.rule && c.to == s.to);
      if (!ok) return false;
    }
    known.insert(key(s.to));
  }
  return true;
}

}  // namespace fullproj
