#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fullproj/grid.hpp"
#include "fullproj/trace.hpp"

namespace fullproj {

// Cells of {0..n-1}^d; planar certification uses d = 2.
class Pattern {
 public:
  Pattern(std::int64_t n, const std::vector<IntVector>& cells, int d = 2);
  explicit Pattern(CellSet cells);

  std::int64_t n() const { return cells_.n(); }
  int dim() const { return cells_.dim(); }
  std::size_t size() const { return cells_.size(); }
  const CellSet& cells() const { return cells_; }
  bool contains(std::int64_t t1, std::int64_t t2) const;

  // "t1 t2" per line, sorted.
  std::string to_text() const;
  static Pattern from_text(std::int64_t n, const std::string& text);

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  CellSet cells_;
};

// v = ((2p+1)/(2n), (2q+1)/(2n)).
struct AvoidanceWitness {
  std::int64_t p = 0, q = 0;
  std::vector<IntVector> t_plus, t_minus;

  Rational vx(std::int64_t n) const { return Rational(2 * p + 1, 2 * n); }
  Rational vy(std::int64_t n) const { return Rational(2 * q + 1, 2 * n); }
};

struct BlockingVerdicts {
  bool traces = false;
  bool tangents = false;
  std::size_t trace_count = 0;
};

struct Certificate {
  static constexpr int kSchemaVersion = 1;

  Pattern pattern;
  BlockingVerdicts blocking;
  AvoidanceWitness avoidance;

  std::string to_json() const;
  // Throws CertificateFormatError on malformed input.
  static Certificate from_json(const std::string& text);
};

class CertificateFormatError : public Error {
 public:
  using Error::Error;
};

// A failed certification step; carries an avoiding line when blocking
// failed.
class CertificateError : public Error {
 public:
  CertificateError(const std::string& what, std::optional<Line> witness = std::nullopt)
      : Error(what), witness_(std::move(witness)) {}
  const std::optional<Line>& witness() const { return witness_; }

 private:
  std::optional<Line> witness_;
};

bool verify_blocking_by_traces(const Pattern& pattern);
bool verify_blocking_by_traces(const Pattern& pattern, const TraceFamily2D& family);

// Searches lines supported by two corner points (of pattern cells or of the
// unit square) and their small shifts and rotations. Returns an exactly
// verified line that meets the unit square and misses every pattern cell.
std::optional<Line> find_gap_by_tangents(const Pattern& pattern);
bool verify_blocking_by_tangents(const Pattern& pattern);

// Whether v(p, q) - K1 misses K1 + Z^2, for p, q in [n, 2n-1].
bool avoidance_holds(const Pattern& pattern, std::int64_t p, std::int64_t q);
AvoidanceWitness avoidance_witness(const Pattern& pattern, std::int64_t p, std::int64_t q);

// First (p, q) in lexicographic order over [n, 2n-1]^2 whose half-grid
// vector avoids; smaller indices are equivalent modulo the lattice.
std::optional<AvoidanceWitness> verify_sumset_avoidance(const Pattern& pattern);

Certificate make_certificate(const Pattern& pattern);
// `prefer` is tried before the lexicographic scan.
Certificate make_certificate(const Pattern& pattern, const TraceFamily2D& family,
                             std::optional<std::pair<std::int64_t, std::int64_t>> prefer = std::nullopt);

}  // namespace fullproj
