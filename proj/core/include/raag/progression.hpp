#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raag/alphabet.hpp"
#include "raag/letter.hpp"

namespace raag {

/// An occurrence vector: per-letter counts over an explicit support set.
struct ParikhPoint {
  std::vector<Letter> support;   // strictly increasing letter ids
  std::vector<uint64_t> counts;  // aligned with support

  static ParikhPoint over(std::span<const Letter> support,
                          std::span<const uint64_t> counts);
  static ParikhPoint zeros(std::span<const Letter> support);

  size_t arity() const { return support.size(); }
  std::optional<uint64_t> count_of(Letter x) const;
  /// Restriction to the letters of `sub` that occur in the support.
  ParikhPoint project(std::span<const Letter> sub) const;
  bool same_support(const ParikhPoint& other) const {
    return support == other.support;
  }

  std::string to_string(const IndependenceAlphabet& alpha) const;
  friend bool operator==(const ParikhPoint&, const ParikhPoint&) = default;
  friend auto operator<=>(const ParikhPoint&, const ParikhPoint&) = default;
};

/// The set { init + k * delta | 0 <= k <= steps } in N^support.
/// Canonical degenerate form: a singleton has steps == 0 and an all-zero
/// delta.
struct ArithProgression {
  ParikhPoint init;
  ParikhPoint delta;
  uint64_t steps = 0;

  static ArithProgression singleton(ParikhPoint p);
  static ArithProgression make(ParikhPoint init, ParikhPoint delta, uint64_t steps);

  uint64_t count() const { return steps + 1; }
  ParikhPoint at(uint64_t k) const;
  ParikhPoint first() const { return init; }
  ParikhPoint last() const { return at(steps); }
  bool contains(const ParikhPoint& p) const;
  /// All members; throws ValidationError beyond `limit` points.
  std::vector<ParikhPoint> enumerate(uint64_t limit = 1u << 20) const;
  /// Without the first and the last member; absent when fewer than three
  /// members exist.
  std::optional<ArithProgression> without_ends() const;

  std::string to_string(const IndependenceAlphabet& alpha) const;
  friend bool operator==(const ArithProgression&, const ArithProgression&) = default;
};

/// Amalgamation: the set of vectors over the union support whose projections
/// lie in `p` and `q`. Requires overlapping supports (absent otherwise).
/// Shared coordinates are matched by direct equality when both step sizes
/// vanish, by a single division when one vanishes, and by the least common
/// simultaneous congruence otherwise; the step range is clamped at the end.
/// Returns absent when the solution set is empty. Throws ValidationError in
/// the one unrepresentable corner (two unpinned multi-step progressions),
/// which the matching algorithms never produce.
std::optional<ArithProgression> amalgamate(const ArithProgression& p,
                                           const ArithProgression& q);

}  // namespace raag
