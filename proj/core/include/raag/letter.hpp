#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace raag {

/// A letter is an index into the symbol table of an IndependenceAlphabet.
/// Signed alphabets interleave their symbols as a, a^-1, b, b^-1, ..., so the
/// index order is the canonical total order used for normal forms.
class Letter {
 public:
  Letter() = default;
  explicit Letter(uint32_t id) : id_(id) {}

  uint32_t id() const { return id_; }

  friend bool operator==(Letter, Letter) = default;
  friend std::strong_ordering operator<=>(Letter, Letter) = default;

 private:
  uint32_t id_ = 0;
};

using LetterWord = std::vector<Letter>;

}  // namespace raag

template <>
struct std::hash<raag::Letter> {
  size_t operator()(raag::Letter x) const noexcept {
    return std::hash<uint32_t>{}(x.id());
  }
};
