#pragma once

#include <string>
#include <vector>

namespace fullproj {

struct Params {
  int l = 2, k = 1, d = 2;
  friend bool operator==(const Params&, const Params&) = default;
};

enum class Verdict { Exists, NotExists, Open };

struct DerivationStep {
  std::string rule;  // "base", "R1".."R4", "bound"
  std::vector<Params> from;
  Params to;
  std::string citation;
};

struct ClassificationResult {
  Verdict verdict = Verdict::Open;
  // Replayable chain ending at the queried parameters; empty for Open.
  std::vector<DerivationStep> derivation;

  std::string to_json() const;
};

std::string to_string(Verdict v);

// Existence of a compact K in [0,1]^d meeting every k-flat that meets the
// cube with lK nowhere dense. Requires l >= 2, 0 < k < d.
ClassificationResult classify(int l, int k, int d);

// Replays a chain: every step's premises are earlier conclusions or bases
// and every rule application is valid.
bool replay_derivation(const ClassificationResult& result, Params target);

}  // namespace fullproj
