#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raag/alphabet.hpp"
#include "raag/letter.hpp"
#include "raag/progression.hpp"

namespace raag {

inline constexpr uint64_t kDefaultGuard = uint64_t{1} << 20;

/// Configuration of the word engine behind the compressed-word primitives.
/// The reference engine materializes words up to `decompress_guard` letters
/// and runs plain word algorithms; beyond the guard it raises
/// ResourceLimitError instead of ever answering wrongly. The `compressed`
/// mode is reserved for a polynomial-time engine with the same contract and
/// is currently served by the reference engine.
struct WordBackend {
  enum class Mode { reference, compressed };
  Mode mode = Mode::reference;
  uint64_t decompress_guard = kDefaultGuard;
};

/// A straight-line program in Chomsky normal form: every nonterminal has
/// exactly one production, either X -> a or X -> Y Z, and the derivation
/// relation is acyclic, so the program derives exactly one word val(S).
/// The designated empty program derives the empty word.
///
/// Construction keeps productions in a children-before-parents order,
/// restricted to nonterminals reachable from the start symbol, with cached
/// per-nonterminal lengths and letter counts. Instances are immutable.
class Slp {
 public:
  using NtId = int32_t;

  /// One production. Terminal iff left < 0.
  struct Production {
    NtId left = -1;
    NtId right = -1;
    Letter terminal{};
    bool is_terminal() const { return left < 0; }
  };

  Slp() = default;

  static Slp empty(IndependenceAlphabet alphabet);
  static Slp letter(const IndependenceAlphabet& alphabet, Letter x);
  /// Depth-balanced program with val = w; size O(|w|), depth O(log |w|).
  static Slp from_word(const IndependenceAlphabet& alphabet,
                       std::span<const Letter> w);
  /// Validates acyclicity and letter range, drops nonterminals unreachable
  /// from `start`, and reorders children before parents. `names` (optional)
  /// are display names aligned with `productions`.
  static Slp from_productions(const IndependenceAlphabet& alphabet,
                              std::vector<Production> productions, NtId start,
                              std::vector<std::string> names = {});

  const IndependenceAlphabet& alphabet() const { return alphabet_; }
  bool is_empty_program() const { return start_ < 0; }
  int size() const { return static_cast<int>(prods_.size()); }
  NtId start() const { return start_; }
  const Production& production(NtId x) const;
  /// Display name for reports: the parsed name when one survives, else "#i".
  std::string nt_display(NtId x) const;
  std::vector<NtId> binary_nonterminals() const;

  uint64_t length() const;
  uint64_t length(NtId x) const;
  /// Letter counts of val(start) (index = letter id).
  std::span<const uint64_t> parikh() const;
  std::span<const uint64_t> parikh(NtId x) const;
  /// Letters occurring in val(start), canonical order.
  std::vector<Letter> alph() const;

  Letter letter_at(uint64_t i) const;                        // 1-based
  std::vector<uint64_t> prefix_parikh(uint64_t pos) const;   // counts in val[1..pos]
  std::vector<uint64_t> prefix_parikh(NtId under, uint64_t pos) const;
  /// Letters `count` strictly before the m-th occurrence of `select`;
  /// absent when fewer than m occurrences exist. Pure grammar descent.
  std::optional<uint64_t> rank_before_select(Letter select, uint64_t m,
                                             Letter count) const;

  /// val(result) = val(this)[i..j], 1-based inclusive; i == j+1 gives the
  /// empty program. Adds O(depth) fresh nonterminals along the two cut paths.
  Slp substring(uint64_t i, uint64_t j) const;
  Slp substring(NtId under, uint64_t i, uint64_t j) const;
  /// The sub-program reachable from x, with start x.
  Slp rooted_at(NtId x) const;

  std::vector<Letter> decompress(uint64_t guard = kDefaultGuard) const;
  std::vector<Letter> decompress(const WordBackend& backend) const;

 private:
  struct Builder;
  void seal();

  IndependenceAlphabet alphabet_;
  std::vector<Production> prods_;
  std::vector<std::string> names_;  // empty or aligned with prods_
  NtId start_ = -1;
  std::vector<uint64_t> lengths_;
  std::vector<uint64_t> parikhs_;   // flattened size() x alphabet.size()
  std::vector<uint64_t> empty_parikh_;
};

Slp concat(const Slp& x, const Slp& y);
Slp power(const Slp& x, uint64_t k);
/// Terminal rules map a to a^-1 and binary rules swap children, so
/// val(result) is the group inverse of val(x). Signed alphabets only.
Slp inverse_slp(const Slp& x);
/// val(result) is val(x) with letters outside `keep` erased, renormalized to
/// Chomsky normal form (the program itself when nothing is erased).
Slp project_slp(const Slp& x, std::span<const Letter> keep);

/// val(x) == val(y), letter for letter. Length and letter-count mismatches
/// answer false without materializing anything.
bool equal_words(const Slp& x, const Slp& y, const WordBackend& backend);

/// val(t)[o+1 .. o+|val(p)|] == val(p). Materializes only the window.
bool occurrence_test_word(const Slp& t, const Slp& p, uint64_t offset,
                          const WordBackend& backend);

/// All start offsets o such that val(p) occurs in val(t, x) straddling the
/// boundary between the two children of the binary nonterminal x, delivered
/// as one arithmetic progression of prefix letter counts over `support`.
/// Absent when no occurrence straddles the boundary.
std::optional<ArithProgression> occurrences_at_cut_word(
    const Slp& t, Slp::NtId x, const Slp& p, std::span<const Letter> support,
    const WordBackend& backend);

}  // namespace raag
