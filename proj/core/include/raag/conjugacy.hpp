#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raag/ctrace.hpp"
#include "raag/slp.hpp"

namespace raag {

/// Witness that an irreducible trace is a double cone around `center`:
/// it equals v * center * v^-1 in the trace monoid.
struct ConeDecomposition {
  CompressedTrace v;
  Letter center;
};

/// Splits an irreducible trace w as v * center * v^-1 when possible: the
/// length must be odd, the middle letter must be `center`, and the two
/// halves must be inverse traces of one another (the factorization at the
/// middle position is unique, so nothing else needs to be tried).
/// Callers reduce w first; irreducibility is a precondition.
std::optional<ConeDecomposition> cone_decompose(const CompressedTrace& w,
                                                Letter center,
                                                const WordBackend& backend);

/// One conjugator for all letters at once: given one program per base letter
/// a denoting w_a, find x with x a x^-1 = w_a in the group for every a.
/// Absent when any reduced w_a fails to be a double a-cone or the cone
/// witnesses admit no common upper bound; a found candidate is verified
/// against every letter before it is returned.
std::optional<Slp> rsccp_solve(std::span<const Slp> letter_programs,
                               const WordBackend& backend);

/// Conjugacy of val(x) and val(y) in the group: equal core letter counts,
/// and the core of x occurs in the (2 * base letters)-th power of the core
/// of y.
bool ccp_decide(const Slp& x, const Slp& y, const WordBackend& backend);

/// A named family of endomorphisms given by their images on the base
/// letters (unnamed letters map to themselves); images of inverse letters
/// are the inverse words. Entries are trusted to be automorphisms.
class GeneratorTable {
 public:
  explicit GeneratorTable(IndependenceAlphabet base);

  const IndependenceAlphabet& base() const { return base_; }
  const IndependenceAlphabet& doubled() const { return doubled_; }

  /// `images` maps base-letter tokens to words over the signed alphabet.
  void define(const std::string& name,
              const std::map<std::string, LetterWord>& images);
  bool has(const std::string& name) const;
  std::vector<std::string> names() const;
  /// Image of the positive base letter with index `base_index`.
  const LetterWord& image(const std::string& name, int base_index) const;

 private:
  IndependenceAlphabet base_;
  IndependenceAlphabet doubled_;
  std::map<std::string, std::vector<LetterWord>> images_;
};

/// Programs A_a (one per base letter, canonical order) with
/// val(A_a) = (g_1 ∘ g_2 ∘ ... ∘ g_n)(a) as a word over the signed alphabet,
/// where the composition applies the rightmost name first. Built level by
/// level with paired direct/inverse nonterminals, so inverse letters
/// substitute in constant time.
std::vector<Slp> apply_generators(const GeneratorTable& table,
                                  std::span<const std::string> word);

/// Does the composed automorphism lie in the inner automorphism group?
bool out_word_problem(const GeneratorTable& table,
                      std::span<const std::string> word,
                      const WordBackend& backend);

}  // namespace raag
