#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fullproj/blocking.hpp"
#include "fullproj/grid.hpp"

namespace fullproj {

// base + span(dirs); dirs linearly independent.
class Flat {
 public:
  Flat(RationalVector base, std::vector<RationalVector> dirs);

  int dim() const { return static_cast<int>(base_.size()); }
  int k() const { return static_cast<int>(dirs_.size()); }
  const RationalVector& base() const { return base_; }
  const std::vector<RationalVector>& dirs() const { return dirs_; }
  RationalVector at(const RationalVector& lambda) const;
  bool contains(const RationalVector& x) const;

 private:
  RationalVector base_;
  std::vector<RationalVector> dirs_;
};

// S: at least k+1 coordinates in [0,1/20] u [19/20,1].
// T: inside [1/20,19/20]^d with at most k coordinates in [8/20,14/20].
bool in_band_set_s(const RationalVector& x, int k);
bool in_band_set_t(const RationalVector& x, int k);

enum class BandTag { S, T };

struct TaggedPoint {
  RationalVector x;
  BandTag tag = BandTag::S;
};

// A point of V in S or T; requires 2k >= d. Throws "flat misses cube".
TaggedPoint find_point_in_S_or_T(const Flat& v);

// Squared Hausdorff distance between closed box unions, bracketed by
// branch and bound. lower == upper means the value is exact.
struct HausdorffBounds {
  Rational lower, upper;
  bool exact() const { return lower == upper; }
};

HausdorffBounds hausdorff_bounds(const CellSet& a, const CellSet& b, const Rational& tolerance = Rational(1, 1000000));
// Upper end of hausdorff_bounds; exact whenever the bracket closes.
Rational hausdorff_distance(const CellSet& a, const CellSet& b);

struct StepRecord {
  std::string kind;  // "initial", "strong", "full"
  std::int64_t a = 1;
  std::size_t cells = 0;
  std::uint64_t seed = 0;
  int attempts = 0;
  std::optional<RationalVector> x;       // strong: point kept out of (K+K)/2
  std::optional<IntVector> target;       // full: C_{n+1} at resolution a
  std::size_t s_cells = 0, t_cells = 0;  // full
  std::size_t max_partners = 0;          // max |E_C|
  bool nested = false, avoids = false, covers = false, separated = false;
  double bound_log10 = 0;  // log10 of the failure-probability bound
};

struct ConstructionState {
  int d = 2;
  int stage = 0;
  std::int64_t a = 1;
  CellSet cells;
  std::vector<StepRecord> history;

  std::string to_json() const;
};

// K_0 = [0,1]^d as all cells at resolution a0.
ConstructionState initial_state(int d, std::int64_t a0 = 1);

class RetryCapExceeded : public Error {
 public:
  RetryCapExceeded(const std::string& what, int attempts, double bound_log10)
      : Error(what), attempts_(attempts), bound_log10_(bound_log10) {}
  int attempts() const { return attempts_; }
  double bound_log10() const { return bound_log10_; }

 private:
  int attempts_;
  double bound_log10_;
};

inline constexpr int kDefaultRetryCap = 64;

// One round of the strong-intersection construction in d = 2. `basis` is
// an open target cell; x is chosen inside it with a prime denominator.
ConstructionState step_strong(const ConstructionState& state, std::int64_t a_next, const Cell& basis,
                              std::uint64_t seed, int retry_cap = kDefaultRetryCap);

// One round of the full-projection construction (d = 2, k = 1). `target`
// is the coarse cell u at resolution a_n; C_{n+1} sits at (u + 1/4).
ConstructionState step_full(const ConstructionState& state, std::int64_t a_next, std::uint64_t seed,
                            const IntVector& target = {}, int retry_cap = kDefaultRetryCap);

// Twentieths band of fine coordinate t at ratio r = a_next / a_n.
inline int band_of(std::int64_t t, std::int64_t r) { return static_cast<int>((t % r) * 20 / r); }

// log10 of the bounds from the two constructions.
double strong_failure_bound_log10(int d, std::int64_t a_n, std::int64_t a_next);
double full_failure_bound_log10(int d, std::int64_t a_n, std::int64_t a_next);
// p = 2^-(3^d + 1).
Rational full_selection_probability(int d);

// H + (1/n) K0 where H are the resolution-n cells meeting k.
CellSet generic_refine(const CellSet& k, const Pattern& pattern);

}  // namespace fullproj
