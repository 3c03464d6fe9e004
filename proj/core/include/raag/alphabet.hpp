#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "raag/letter.hpp"

namespace raag {

/// A finite independence alphabet: letters plus an irreflexive symmetric
/// independence relation I. Dependence D is the exact complement, including
/// every diagonal pair. A "signed" alphabet is the doubled version whose
/// symbols come in inverse pairs and whose independence is lifted from the
/// base letters (signs are invisible to I and D).
///
/// Immutable after construction; cheap to copy and safe to share between
/// threads.
class IndependenceAlphabet {
 public:
  IndependenceAlphabet() = default;

  /// Validates tokens ([a-z0-9_]+, distinct) and pairs (declared, no
  /// reflexive pair) and builds the alphabet. Declaration order is the
  /// canonical total order.
  static IndependenceAlphabet build(
      const std::vector<std::string>& letters,
      const std::vector<std::pair<std::string, std::string>>& independent_pairs);

  /// The signed version of this alphabet, with symbols a, a^-1, b, b^-1, ...
  /// Memoized: repeated calls return the same alphabet object.
  IndependenceAlphabet doubled() const;

  bool valid() const { return data_ != nullptr; }
  /// Number of symbols (2 * base_size() for a signed alphabet).
  int size() const;
  /// Number of base letters.
  int base_size() const;
  bool is_signed() const;
  /// Two alphabet handles denote the same alphabet object.
  bool same_as(const IndependenceAlphabet& other) const {
    return data_ == other.data_;
  }

  std::vector<Letter> symbols() const;
  const std::string& name(Letter x) const;
  std::string_view base_name(Letter x) const;
  int sign(Letter x) const;
  Letter inverse(Letter x) const;  // signed alphabets only
  LetterWord inverse_word(std::span<const Letter> w) const;

  std::optional<Letter> find(std::string_view token) const;
  Letter parse_letter(std::string_view token) const;  // throws ValidationError

  bool independent(Letter x, Letter y) const;
  bool dependent(Letter x, Letter y) const { return !independent(x, y); }
  /// Distinct symbols dependent on x (x itself excluded), canonical order.
  const std::vector<Letter>& dependence_neighbors(Letter x) const;

  /// Connectivity of the dependence subgraph induced by `subset`.
  /// Empty sets and singletons count as connected.
  bool connected(std::span<const Letter> subset) const;
  /// Dependence-connected components of `subset`, each sorted canonically,
  /// ordered by least member.
  std::vector<std::vector<Letter>> components(std::span<const Letter> subset) const;

  /// Enumerates `domain` as a1,...,an such that every a_i (i >= 2) has a
  /// dependence neighbor among a1..a_{i-1}, all `priority` letters come
  /// first, and the optional seed edge comes at the very front. Deterministic
  /// breadth-first choice by canonical order. Throws ValidationError when the
  /// required connectivity is missing, naming the letters left over.
  std::vector<Letter> dependence_order(
      std::span<const Letter> domain, std::span<const Letter> priority,
      std::optional<std::pair<Letter, Letter>> seed = std::nullopt) const;

  /// dependence_order over all symbols.
  std::vector<Letter> dependence_order(
      std::span<const Letter> priority,
      std::optional<std::pair<Letter, Letter>> seed = std::nullopt) const;

 private:
  struct Data;
  explicit IndependenceAlphabet(std::shared_ptr<const Data> data)
      : data_(std::move(data)) {}
  const Data& data() const;

  std::shared_ptr<const Data> data_;
};

}  // namespace raag
