#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "raag/ctrace.hpp"
#include "raag/progression.hpp"
#include "raag/slp.hpp"

namespace raag {

/// One connected matching instance: text and pattern projected to a single
/// dependence-connected letter set, with the admissibility requirements
/// checked up front: the pattern letters form a connected set meeting every
/// distinct dependent pair of the component.
///
/// Occurrences of the pattern straddling the boundary of a text nonterminal
/// are recovered in two families: "single" ones extended letter by letter
/// from an extreme member of some pair progression, and "periodic" ones
/// amalgamated across all pairs.
class MatchInstance {
 public:
  MatchInstance(CompressedTrace text, CompressedTrace pattern,
                WordBackend backend);

  const Slp& text() const { return text_.slp; }
  const Slp& pattern() const { return pattern_.slp; }
  const std::vector<Letter>& component() const { return component_; }
  const std::vector<Letter>& pattern_alph() const { return pattern_alph_; }
  std::vector<Slp::NtId> candidate_nonterminals() const {
    return text_.slp.binary_nonterminals();
  }

  /// Occurrences of the pair-projected pattern straddling the pair-projected
  /// boundary of X, as one progression over {a, b}; absent when none.
  std::optional<ArithProgression> pair_cut_progression(Slp::NtId x, Letter a,
                                                       Letter b) const;

  /// Extends a pair occurrence at the boundary of X to the unique full
  /// occurrence projecting onto it, when one exists.
  std::optional<ParikhPoint> extend_single(Slp::NtId x,
                                           std::pair<Letter, Letter> seed_pair,
                                           const ParikhPoint& seed) const;

  /// All full occurrences found from extreme members of the pattern-letter
  /// pair progressions at X, deduplicated.
  std::vector<ParikhPoint> single_occurrences(Slp::NtId x) const;

  /// The progression of occurrences at the boundary of X that are interior
  /// in every pattern-letter pair progression.
  std::optional<ArithProgression> periodic_at_cut(Slp::NtId x) const;

 private:
  const Slp& pair_text(Slp::NtId x, Letter a, Letter b) const;
  const Slp& pair_pattern(Letter a, Letter b) const;

  CompressedTrace text_;
  CompressedTrace pattern_;
  WordBackend backend_;
  std::vector<Letter> component_;
  std::vector<Letter> pattern_alph_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<Slp>> pattern_cache_;
  mutable std::map<std::tuple<Slp::NtId, uint32_t, uint32_t>, std::unique_ptr<Slp>> text_cache_;
  mutable std::map<std::tuple<Slp::NtId, uint32_t, uint32_t>,
                   std::optional<ArithProgression>> progression_cache_;
};

/// Is the pattern a factor of the text, i.e. does some prefix u of the text
/// satisfy u * pattern <= text? Splits the text alphabet into dependence
/// components and requires, for every component the pattern touches, that
/// the pattern letters in it are connected and meet every distinct dependent
/// pair (ValidationError otherwise). Empty patterns match; one-letter
/// patterns reduce to a letter count.
bool is_factor(const CompressedTrace& pattern, const CompressedTrace& text,
               const WordBackend& backend);

struct MatchWitness {
  std::vector<Letter> component;
  Slp::NtId nonterminal = -1;
  std::string nonterminal_name;
  /// At-boundary occurrences at that nonterminal, merged into as few
  /// progressions as possible (singles absorbed into the periodic family
  /// when adjacent to it).
  std::vector<ArithProgression> progressions;
};

struct MatchResult {
  bool is_factor = false;
  std::vector<MatchWitness> witnesses;  // one per component with a cut match
};

MatchResult match_with_witness(const CompressedTrace& pattern,
                               const CompressedTrace& text,
                               const WordBackend& backend);

}  // namespace raag
