#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "raag/alphabet.hpp"
#include "raag/conjugacy.hpp"
#include "raag/slp.hpp"

namespace raag {

/// A parsed session file: one alphabet declaration plus named words,
/// programs, generators and generator-table groupings.
///
/// Format (line oriented; ';' separates entries inside braces, '#' starts a
/// comment):
///
///   letters: a b c d e
///   independent: a c, a d, a e, b d, d e
///   word u = a e a d b a c d d
///   slp X { X1 -> a ; X2 -> b ; X3 -> X1 X2 ; start X3 }
///   slp E { empty }
///   gen tau { a => a b ; }
///   table g = tau
///
/// Words and programs live over the signed alphabet; inverse letters are
/// written a^-1. Unlisted letters of a generator map to themselves.
struct Session {
  IndependenceAlphabet base;
  IndependenceAlphabet signed_alphabet;
  std::map<std::string, Slp> objects;
  std::shared_ptr<GeneratorTable> generators;
  std::map<std::string, std::vector<std::string>> tables;

  const Slp& object(const std::string& name) const;
};

Session parse_session_text(const std::string& text);
Session parse_session_file(const std::string& path);

/// Renders a word as space-separated letter tokens.
std::string format_word(const IndependenceAlphabet& alpha,
                        std::span<const Letter> w);
/// Renders a program in session syntax (re-readable).
std::string format_slp(const Slp& s, const std::string& name);

}  // namespace raag
