#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "raag/alphabet.hpp"
#include "raag/letter.hpp"
#include "raag/progression.hpp"

namespace raag {

/// An element of the trace monoid, stored as the lexicographically least
/// linearization under the canonical letter order. Two Trace values over the
/// same alphabet are equal in the monoid iff their stored words are equal.
///
/// These explicit representations back the small-scale algorithms and the
/// oracles that validate the compressed ones; none of them aims at scale.
class Trace {
 public:
  static Trace empty(IndependenceAlphabet alphabet);
  /// Canonicalizes an arbitrary representative word.
  static Trace from_letters(const IndependenceAlphabet& alphabet,
                            std::span<const Letter> w);

  const IndependenceAlphabet& alphabet() const { return alphabet_; }
  const LetterWord& word() const { return word_; }
  uint64_t size() const { return word_.size(); }
  bool is_empty() const { return word_.empty(); }

  std::vector<Letter> alph() const;
  std::vector<uint64_t> parikh() const;
  /// Possible first letters.
  std::vector<Letter> min_letters() const;
  /// Possible last letters.
  std::vector<Letter> max_letters() const;

  Trace inverse() const;  // signed alphabets only

  friend Trace operator*(const Trace& u, const Trace& v);
  friend bool operator==(const Trace& u, const Trace& v);
  friend bool operator!=(const Trace& u, const Trace& v) { return !(u == v); }

 private:
  IndependenceAlphabet alphabet_;
  LetterWord word_;
};

/// u is a prefix of w: some v satisfies uv = w in the monoid.
bool prefix_of(const Trace& u, const Trace& w);

/// alph(u) x alph(v) entirely independent.
bool independent(const Trace& u, const Trace& v);

struct TraceInfDiff {
  Trace inf;         // u ⊓ v
  Trace left_rest;   // u \ v
  Trace right_rest;  // v \ u
};
/// The greatest common prefix together with both differences:
/// u = inf * left_rest and v = inf * right_rest.
TraceInfDiff inf_diff(const Trace& u, const Trace& v);

/// Least common extension; exists iff the two differences are independent.
std::optional<Trace> sup(const Trace& u, const Trace& v);
/// Left fold of sup; absent as soon as one step has no upper bound.
std::optional<Trace> sup_many(std::span<const Trace> traces);

/// The irreducible normal form under free cancellation of adjacent inverse
/// letters modulo commutation, computed in one left-to-right pass over
/// per-letter stacks. Signed alphabets only.
Trace nf_r(const Trace& t);
LetterWord nf_r_word(const IndependenceAlphabet& alphabet,
                     std::span<const Letter> w);
bool is_irreducible(const Trace& t);
/// Irreducible and no letter is both a possible first letter of t and of
/// its inverse.
bool is_cyclically_irreducible(const Trace& t);

struct CoreData {
  Trace core;
  Trace conjugator;  // d with nf_r(t) = d * core * d^-1
};
CoreData core_with_conjugator(const Trace& t);
/// The unique cyclically irreducible y with nf_r(t) = d y d^-1.
Trace core_explicit(const Trace& t);

/// All occurrence vectors of p in t: letter counts of prefixes u with
/// u * p a prefix of t. Exhaustive enumeration; test scale only.
std::vector<ParikhPoint> factor_occurrences_oracle(const Trace& p, const Trace& t);

/// Occurrence vectors restricted to those straddling a cut, i.e. with
/// O_a < left_counts[a] and O_b + |p|_b > left_counts[b] for some letters
/// a, b of p.
std::vector<ParikhPoint> at_cut_occurrences_oracle(
    const Trace& p, const Trace& t, std::span<const uint64_t> left_counts);

/// Conjugacy of u and v in the group, decided through transposition of
/// cores: some split core(u) = w1 w2 has w2 w1 = core(v). Test scale only.
bool conjugate_oracle(const Trace& u, const Trace& v);

struct LeviSplit {
  Trace common;      // x
  Trace left_only;   // y1
  Trace right_only;  // y2
  Trace tail;        // z
};
/// All x, y1, y2, z with u1 = x y1, u2 = y2 z, v1 = x y2, v2 = y1 z and
/// y1 independent of y2. Requires u1 u2 = v1 v2. Test scale only.
std::vector<LeviSplit> levi_decompositions(const Trace& u1, const Trace& u2,
                                           const Trace& v1, const Trace& v2);

/// The unique split t = u1 u2 with u2 independent of a and |u2| maximal.
std::pair<Trace, Trace> split_independent_suffix(const Trace& t, Letter a);

}  // namespace raag
