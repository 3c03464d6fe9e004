#include "raag/slp.hpp"

#include <algorithm>

#include "doctest.h"
#include "raag/errors.hpp"
#include "testutil.hpp"

using namespace raag;
using namespace raag::testing;

namespace {

const WordBackend kBackend{};

Slp ab_pow4(const IndependenceAlphabet& alpha) {
  // X5 -> X4 X4, X4 -> X3 X3, X3 -> X1 X2, X1 -> a, X2 -> b
  Slp ab = Slp::from_word(alpha, compact_word(alpha, "ab"));
  return power(ab, 4);
}

std::string spell(const Slp& s) {
  std::string out;
  for (Letter x : s.decompress())
    out += s.alphabet().name(x)[0];  // single-character fixtures only
  return out;
}

}  // namespace

TEST_CASE("from_word, length, parikh") {
  auto alpha = example_alphabet();
  Slp s = ab_pow4(alpha);
  CHECK(s.length() == 8);
  CHECK(s.parikh()[alpha.parse_letter("a").id()] == 4);
  CHECK(s.parikh()[alpha.parse_letter("b").id()] == 4);
  CHECK(spell(s) == "abababab");

  Slp e = Slp::empty(alpha);
  CHECK(e.length() == 0);
  CHECK(e.is_empty_program());
  for (uint64_t c : e.parikh()) CHECK(c == 0);
}

TEST_CASE("the 30-letter fixture text has the documented letter counts") {
  auto alpha = example_alphabet();
  Slp y = Slp::from_word(alpha, compact_word(alpha, "acbcadcbcacbcacbcacbcacb"));
  Slp z = Slp::from_word(alpha, compact_word(alpha, "cacbcacbcacbcacbdc"));
  Slp x = concat(y, z);
  CHECK(x.length() == 42);
  CHECK(x.parikh()[alpha.parse_letter("a").id()] == 10);
  CHECK(x.parikh()[alpha.parse_letter("b").id()] == 10);
  CHECK(x.parikh()[alpha.parse_letter("c").id()] == 20);
  CHECK(x.parikh()[alpha.parse_letter("d").id()] == 2);
}

TEST_CASE("letter_at descends without decompression") {
  auto alpha = example_alphabet();
  Slp s = ab_pow4(alpha);
  CHECK(s.letter_at(1) == alpha.parse_letter("a"));
  CHECK(s.letter_at(3) == alpha.parse_letter("a"));
  CHECK(s.letter_at(4) == alpha.parse_letter("b"));
  CHECK_THROWS_AS(s.letter_at(9), ValidationError);
  CHECK_THROWS_AS(s.letter_at(0), ValidationError);
}

TEST_CASE("substring extraction") {
  auto alpha = example_alphabet();
  Slp s = ab_pow4(alpha);
  CHECK(spell(s.substring(2, 5)) == "baba");
  CHECK(spell(s.substring(1, 8)) == "abababab");
  CHECK(s.substring(4, 3).length() == 0);  // empty slice convention
  CHECK_THROWS_AS(s.substring(0, 3), ValidationError);
  CHECK_THROWS_AS(s.substring(2, 9), ValidationError);
}

TEST_CASE("concat and power") {
  auto alpha = example_alphabet();
  Slp ab = Slp::from_word(alpha, compact_word(alpha, "ab"));
  Slp ba = Slp::from_word(alpha, compact_word(alpha, "ba"));
  CHECK(spell(concat(ab, ba)) == "abba");
  CHECK(spell(power(ab, 3)) == "ababab");
  CHECK(power(ab, 0).length() == 0);
  CHECK(power(Slp::empty(alpha), 5).length() == 0);
}

TEST_CASE("inverse program") {
  auto alpha = example_alphabet().doubled();
  Slp s = Slp::from_word(alpha, compact_word(alpha, "aBc"));
  Slp inv = inverse_slp(s);
  auto w = inv.decompress();
  CHECK(w == compact_word(alpha, "Cba"));
  CHECK(inverse_slp(inv).decompress() == s.decompress());
  CHECK(inverse_slp(Slp::empty(alpha)).length() == 0);

  auto unsigned_alpha = example_alphabet();
  Slp t = Slp::from_word(unsigned_alpha, compact_word(unsigned_alpha, "ab"));
  CHECK_THROWS_AS(inverse_slp(t), ValidationError);
}

TEST_CASE("projection erases letters and renormalizes") {
  auto alpha = example_alphabet();
  Slp s = ab_pow4(alpha);
  Letter a = alpha.parse_letter("a");
  Letter keep[1] = {a};
  CHECK(spell(project_slp(s, keep)) == "aaaa");
  CHECK(project_slp(s, {}).is_empty_program());

  // Projecting the fixture text to {c, d}.
  Slp y = Slp::from_word(alpha, compact_word(alpha, "acbcadcbcacbcacbcacbcacb"));
  Slp z = Slp::from_word(alpha, compact_word(alpha, "cacbcacbcacbcacbdc"));
  Slp x = concat(y, z);
  Letter cd[2] = {alpha.parse_letter("c"), alpha.parse_letter("d")};
  CHECK(spell(project_slp(x, cd)) == "ccdcccccccccccccccccdc");
}

TEST_CASE("projection composes like set intersection") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 100; ++round) {
    auto alpha = random_alphabet(rng);
    auto w = random_word(rng, alpha, 12);
    Slp s = random_slp_for(rng, alpha, w);
    std::vector<Letter> g1, g2, g12;
    for (Letter x : alpha.symbols()) {
      bool in1 = rng() % 2, in2 = rng() % 2;
      if (in1) g1.push_back(x);
      if (in2) g2.push_back(x);
      if (in1 && in2) g12.push_back(x);
    }
    Slp lhs = project_slp(project_slp(s, g1), g2);
    Slp rhs = project_slp(s, g12);
    CHECK(lhs.decompress() == rhs.decompress());
  }
}

TEST_CASE("equal_words") {
  auto alpha = example_alphabet();
  std::mt19937_64 rng(3);
  Slp a = ab_pow4(alpha);
  Slp b = random_slp_for(rng, alpha, compact_word(alpha, "abababab"));
  Slp c = Slp::from_word(alpha, compact_word(alpha, "babababa"));
  CHECK(equal_words(a, b, kBackend));
  CHECK(!equal_words(a, c, kBackend));
  // Different lengths answer without decompressing.
  Slp huge = power(a, uint64_t{1} << 40);
  Slp huge2 = concat(huge, a);
  CHECK(!equal_words(huge, huge2, kBackend));
  CHECK_THROWS_AS(equal_words(huge, power(c, uint64_t{1} << 40), kBackend),
                  ResourceLimitError);
}

TEST_CASE("occurrence_test_word") {
  auto alpha = example_alphabet();
  Slp t = Slp::from_word(alpha, compact_word(alpha, "abab"));
  Slp p = Slp::from_word(alpha, compact_word(alpha, "ab"));
  CHECK(occurrence_test_word(t, p, 2, kBackend));
  CHECK(!occurrence_test_word(t, p, 1, kBackend));
  CHECK_THROWS_AS(occurrence_test_word(t, p, 3, kBackend), ValidationError);

  // c c d c^17 d c with pattern c^10: a window that crosses the second d.
  Slp text = Slp::from_word(alpha, compact_word(alpha, "ccdcccccccccccccccccdc"));
  Slp patt = power(Slp::letter(alpha, alpha.parse_letter("c")), 10);
  CHECK(!occurrence_test_word(text, patt, 11, kBackend));
  CHECK(occurrence_test_word(text, patt, 3, kBackend));
}

TEST_CASE("rank_before_select") {
  auto alpha = example_alphabet();
  Slp t = Slp::from_word(alpha, compact_word(alpha, "ccdcccccccccccccccccdc"));
  Letter c = alpha.parse_letter("c"), d = alpha.parse_letter("d");
  CHECK(t.rank_before_select(c, 3, d) == 1);
  CHECK(t.rank_before_select(c, 1, d) == 0);
  CHECK(t.rank_before_select(d, 2, c) == 19);
  CHECK(!t.rank_before_select(d, 3, c).has_value());
  CHECK(!t.rank_before_select(c, 21, d).has_value());
}

TEST_CASE("occurrences at a cut: two-letter projections from the pattern example") {
  auto alpha = example_alphabet();
  Letter a = alpha.parse_letter("a"), b = alpha.parse_letter("b"),
         c = alpha.parse_letter("c"), d = alpha.parse_letter("d");

  auto run = [&](const std::string& yw, const std::string& zw,
                 const std::string& pw, std::vector<Letter> support) {
    Slp y = Slp::from_word(alpha, compact_word(alpha, yw));
    Slp z = Slp::from_word(alpha, compact_word(alpha, zw));
    Slp glued = concat(y, z);
    Slp p = Slp::from_word(alpha, compact_word(alpha, pw));
    return occurrences_at_cut_word(glued, glued.start(), p, support, kBackend);
  };

  auto p_ab = run("abababababab", "abababab", "ababababab", {a, b});
  REQUIRE(p_ab.has_value());
  CHECK(p_ab->init.counts == std::vector<uint64_t>{2, 2});
  CHECK(p_ab->delta.counts == std::vector<uint64_t>{1, 1});
  CHECK(p_ab->steps == 3);

  auto p_bc = run("cbccbccbccbccbccb", "ccbccbccbccbc", "cbccbccbccbccbc",
                  {b, c});
  REQUIRE(p_bc.has_value());
  CHECK(p_bc->init.counts == std::vector<uint64_t>{1, 2});
  CHECK(p_bc->delta.counts == std::vector<uint64_t>{1, 2});
  CHECK(p_bc->steps == 4);

  auto p_cd = run("ccdccccccccc", "ccccccccdc", "cccccccccc", {c, d});
  REQUIRE(p_cd.has_value());
  CHECK(p_cd->init.counts == std::vector<uint64_t>{2, 1});
  CHECK(p_cd->delta.counts == std::vector<uint64_t>{1, 0});
  CHECK(p_cd->steps == 7);

  auto none = run("ab", "ab", "ba", {a, b});
  CHECK(none.has_value());  // b|a straddles: offsets {1}
  auto missing = run("aa", "aa", "ab", {a, b});
  CHECK(!missing.has_value());
}

TEST_CASE("at-cut occurrences equal brute force and form a progression") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int round = 0; round < 400; ++round) {
    auto alpha = random_alphabet(rng, 3);
    auto yw = random_word(rng, alpha, 8);
    auto zw = random_word(rng, alpha, 8);
    auto pw = random_word(rng, alpha, 5);
    if (yw.empty() || zw.empty() || pw.empty()) continue;
    Slp y = Slp::from_word(alpha, yw);
    Slp z = Slp::from_word(alpha, zw);
    Slp glued = concat(y, z);
    Slp p = Slp::from_word(alpha, pw);
    auto prog =
        occurrences_at_cut_word(glued, glued.start(), p, alpha.symbols(), kBackend);

    // Brute force over the explicit words.
    LetterWord text = yw;
    text.insert(text.end(), zw.begin(), zw.end());
    std::vector<std::vector<uint64_t>> expected;
    for (size_t o = 0; o + pw.size() <= text.size(); ++o) {
      if (o >= yw.size() || o + pw.size() <= yw.size()) continue;
      if (!std::equal(pw.begin(), pw.end(), text.begin() + o)) continue;
      std::vector<uint64_t> counts(alpha.size(), 0);
      for (size_t k = 0; k < o; ++k) ++counts[text[k].id()];
      expected.push_back(counts);
    }
    if (!prog) {
      CHECK(expected.empty());
      continue;
    }
    ++checked;
    auto members = prog->enumerate();
    REQUIRE(members.size() == expected.size());
    for (size_t i = 0; i < members.size(); ++i)
      CHECK(members[i].counts == expected[i]);
  }
  CHECK(checked > 20);  // the generator produced meaningful cases
}

TEST_CASE("prefix parikh counts") {
  auto alpha = example_alphabet();
  Slp s = ab_pow4(alpha);
  auto zero = s.prefix_parikh(0);
  CHECK(std::all_of(zero.begin(), zero.end(), [](uint64_t c) { return !c; }));
  auto three = s.prefix_parikh(3);
  CHECK(three[alpha.parse_letter("a").id()] == 2);
  CHECK(three[alpha.parse_letter("b").id()] == 1);
  auto all = s.prefix_parikh(8);
  CHECK(all[alpha.parse_letter("a").id()] == 4);
}

TEST_CASE("operations agree with their word counterparts on random programs") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 300; ++round) {
    auto alpha = random_alphabet(rng);
    auto w = random_word(rng, alpha, 12);
    Slp s = random_slp_for(rng, alpha, w);
    REQUIRE(s.decompress() == w);
    CHECK(s.length() == w.size());

    if (!w.empty()) {
      std::uniform_int_distribution<uint64_t> pos(1, w.size());
      uint64_t i = pos(rng), j = pos(rng);
      if (i > j) std::swap(i, j);
      auto sub = s.substring(i, j).decompress();
      LetterWord expect(w.begin() + i - 1, w.begin() + j);
      CHECK(sub == expect);
      CHECK(s.letter_at(i) == w[i - 1]);
    }

    uint64_t k = rng() % 4;
    auto pw = power(s, k).decompress();
    LetterWord expect;
    for (uint64_t r = 0; r < k; ++r) expect.insert(expect.end(), w.begin(), w.end());
    CHECK(pw == expect);
  }
}

TEST_CASE("huge programs support the grammar-native operations") {
  auto alpha = example_alphabet();
  Slp ab = Slp::from_word(alpha, compact_word(alpha, "ab"));
  Slp big = power(ab, uint64_t{1} << 30);  // 2^31 letters
  CHECK(big.length() == uint64_t{2} << 30);
  CHECK(big.letter_at((uint64_t{1} << 30) + 1) == alpha.parse_letter("a"));
  Slp mid = big.substring(uint64_t{1} << 29, (uint64_t{1} << 29) + 9);
  CHECK(mid.length() == 10);
  Letter keep[1] = {alpha.parse_letter("a")};
  Slp onto_a = project_slp(big, keep);
  CHECK(onto_a.length() == uint64_t{1} << 30);
  CHECK(big.rank_before_select(alpha.parse_letter("b"), uint64_t{1} << 29,
                               alpha.parse_letter("a")) ==
        uint64_t{1} << 29);
}
