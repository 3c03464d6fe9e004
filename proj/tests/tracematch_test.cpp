#include "raag/tracematch.hpp"

#include <set>

#include "doctest.h"
#include "raag/errors.hpp"
#include "testutil.hpp"

using namespace raag;
using namespace raag::testing;

namespace {

const WordBackend kBackend{};

// The worked matching instance: text with the distinguished middle boundary
// and pattern (acbc)^5 over letters a, b, c, d.
struct Fixture {
  IndependenceAlphabet alpha = example_alphabet();
  Slp text;
  Slp pattern;
  Slp::NtId root;

  Fixture() {
    Slp y = Slp::from_word(alpha, compact_word(alpha, "acbcadcbcacbcacbcacbcacb"));
    Slp z = Slp::from_word(alpha, compact_word(alpha, "cacbcacbcacbcacbdc"));
    text = concat(y, z);
    root = text.start();
    pattern = power(Slp::from_word(alpha, compact_word(alpha, "acbc")), 5);
  }

  MatchInstance instance() const {
    return MatchInstance(ct(text), ct(pattern), kBackend);
  }
  Letter L(const char* t) const { return alpha.parse_letter(t); }
};

std::set<std::vector<uint64_t>> as_set(const std::vector<ParikhPoint>& pts) {
  std::set<std::vector<uint64_t>> out;
  for (const auto& p : pts) out.insert(p.counts);
  return out;
}

}  // namespace

TEST_CASE("pair progressions at the fixture boundary") {
  Fixture f;
  auto inst = f.instance();

  auto p_ab = inst.pair_cut_progression(f.root, f.L("a"), f.L("b"));
  REQUIRE(p_ab.has_value());
  CHECK(p_ab->init.counts == std::vector<uint64_t>{2, 2});
  CHECK(p_ab->delta.counts == std::vector<uint64_t>{1, 1});
  CHECK(p_ab->steps == 3);

  auto p_bc = inst.pair_cut_progression(f.root, f.L("b"), f.L("c"));
  REQUIRE(p_bc.has_value());
  CHECK(p_bc->init.counts == std::vector<uint64_t>{1, 2});
  CHECK(p_bc->delta.counts == std::vector<uint64_t>{1, 2});
  CHECK(p_bc->steps == 4);

  auto p_cd = inst.pair_cut_progression(f.root, f.L("c"), f.L("d"));
  REQUIRE(p_cd.has_value());
  CHECK(p_cd->init.counts == std::vector<uint64_t>{2, 1});
  CHECK(p_cd->delta.counts == std::vector<uint64_t>{1, 0});
  CHECK(p_cd->steps == 7);

  CHECK_THROWS_AS(inst.pair_cut_progression(f.root, f.L("a"), f.L("c")),
                  ValidationError);  // independent pair
}

TEST_CASE("single occurrences extend from extreme seeds") {
  Fixture f;
  auto inst = f.instance();

  auto p_bc = inst.pair_cut_progression(f.root, f.L("b"), f.L("c"));
  REQUIRE(p_bc.has_value());
  auto from_first = inst.extend_single(f.root, {f.L("b"), f.L("c")},
                                       p_bc->first());
  REQUIRE(from_first.has_value());
  CHECK(from_first->counts == std::vector<uint64_t>{1, 1, 2, 1});

  auto p_ab = inst.pair_cut_progression(f.root, f.L("a"), f.L("b"));
  auto from_ab = inst.extend_single(f.root, {f.L("a"), f.L("b")},
                                    p_ab->first());
  REQUIRE(from_ab.has_value());
  CHECK(from_ab->counts == std::vector<uint64_t>{2, 2, 4, 1});

  // The last seed of p_ab runs into the second d: no extension.
  auto from_last = inst.extend_single(f.root, {f.L("a"), f.L("b")},
                                      p_ab->last());
  CHECK(!from_last.has_value());

  auto singles = inst.single_occurrences(f.root);
  CHECK(as_set(singles) ==
        std::set<std::vector<uint64_t>>{{1, 1, 2, 1}, {2, 2, 4, 1}});
}

TEST_CASE("periodic occurrences amalgamate the trimmed progressions") {
  Fixture f;
  auto inst = f.instance();
  auto periodic = inst.periodic_at_cut(f.root);
  REQUIRE(periodic.has_value());
  CHECK(periodic->init.counts == std::vector<uint64_t>{3, 3, 6, 1});
  CHECK(periodic->delta.counts == std::vector<uint64_t>{1, 1, 2, 0});
  CHECK(periodic->steps == 1);
}

TEST_CASE("singles and periodic together equal the oracle boundary set") {
  Fixture f;
  auto inst = f.instance();

  std::set<std::vector<uint64_t>> got = as_set(inst.single_occurrences(f.root));
  auto periodic = inst.periodic_at_cut(f.root);
  REQUIRE(periodic.has_value());
  for (const auto& p : periodic->enumerate()) got.insert(p.counts);

  // Oracle at-boundary set over the explicit words, projected to a,b,c,d.
  Trace pat = Trace::from_letters(f.alpha, f.pattern.decompress());
  Trace txt = Trace::from_letters(f.alpha, f.text.decompress());
  auto left = f.text.parikh(f.text.production(f.root).left);
  std::vector<uint64_t> left_counts(left.begin(), left.end());
  auto oracle = at_cut_occurrences_oracle(pat, txt, left_counts);
  std::set<std::vector<uint64_t>> expected;
  for (const auto& o : oracle) {
    std::vector<uint64_t> v = o.counts;
    v.pop_back();  // letter e never occurs
    expected.insert(v);
  }
  CHECK(expected ==
        std::set<std::vector<uint64_t>>{
            {1, 1, 2, 1}, {2, 2, 4, 1}, {3, 3, 6, 1}, {4, 4, 8, 1}});
  CHECK(got == expected);
}

TEST_CASE("factor decisions on the fixture") {
  Fixture f;
  CHECK(is_factor(ct(f.pattern), ct(f.text), kBackend));
  Slp longer = power(Slp::from_word(f.alpha, compact_word(f.alpha, "acbc")), 6);
  CHECK(!is_factor(ct(longer), ct(f.text), kBackend));
  CHECK(is_factor(ct(Slp::empty(f.alpha)), ct(f.text), kBackend));

  auto witness = match_with_witness(ct(f.pattern), ct(f.text), kBackend);
  REQUIRE(witness.is_factor);
  REQUIRE(witness.witnesses.size() == 1);
  REQUIRE(witness.witnesses[0].progressions.size() == 1);
  const ArithProgression& merged = witness.witnesses[0].progressions[0];
  CHECK(merged.init.counts == std::vector<uint64_t>{1, 1, 2, 1});
  CHECK(merged.delta.counts == std::vector<uint64_t>{1, 1, 2, 0});
  CHECK(merged.steps == 3);
}

TEST_CASE("single letters and empty patterns shortcut") {
  auto alpha = example_alphabet();
  auto text = ct(Slp::from_word(alpha, compact_word(alpha, "abcd")));
  CHECK(is_factor(ct(Slp::from_word(alpha, compact_word(alpha, "d"))), text,
                  kBackend));
  CHECK(!is_factor(ct(Slp::from_word(alpha, compact_word(alpha, "e"))), text,
                   kBackend));
  CHECK(is_factor(ct(Slp::empty(alpha)), text, kBackend));
}

TEST_CASE("admissibility is checked per component") {
  auto alpha = example_alphabet();
  // Text over {a, b, c, d}; pattern {a}: pair (c, d) misses the pattern.
  auto text = ct(Slp::from_word(alpha, compact_word(alpha, "abcdab")));
  auto pattern = ct(Slp::from_word(alpha, compact_word(alpha, "aa")));
  CHECK_THROWS_AS(is_factor(pattern, text, kBackend), ValidationError);

  // Pattern letters {a, c} are not connected.
  auto pattern2 = ct(Slp::from_word(alpha, compact_word(alpha, "acac")));
  CHECK_THROWS_AS(is_factor(pattern2, text, kBackend), ValidationError);
}

TEST_CASE("matching splits over independent components") {
  // Letters p, q independent: component {p} and {q} are handled separately.
  auto alpha = IndependenceAlphabet::build({"p", "q"}, {{"p", "q"}});
  auto text = ct(Slp::from_word(alpha, parse_word(alpha, "p q p q p")));
  auto patt = ct(Slp::from_word(alpha, parse_word(alpha, "p p q")));
  CHECK(is_factor(patt, text, kBackend));
  auto too_much = ct(Slp::from_word(alpha, parse_word(alpha, "p p p p")));
  CHECK(!is_factor(too_much, text, kBackend));
}

TEST_CASE("pure power patterns in one-letter components") {
  auto alpha = IndependenceAlphabet::build({"p"}, {});
  auto text = ct(power(Slp::letter(alpha, alpha.parse_letter("p")), 9));
  auto patt = ct(power(Slp::letter(alpha, alpha.parse_letter("p")), 4));
  CHECK(is_factor(patt, text, kBackend));
  auto patt2 = ct(power(Slp::letter(alpha, alpha.parse_letter("p")), 10));
  CHECK(!is_factor(patt2, text, kBackend));
}

TEST_CASE("factor decisions agree with the brute-force oracle") {
  std::mt19937_64 rng(79);
  int positives = 0, admissible = 0;
  for (int round = 0; round < 600; ++round) {
    auto alpha = random_alphabet(rng, 4);
    auto tw = random_word(rng, alpha, 12);
    auto pw = random_word(rng, alpha, 5);
    auto text = ct(random_slp_for(rng, alpha, tw));
    auto patt = ct(random_slp_for(rng, alpha, pw));
    bool expected;
    {
      Trace p = Trace::from_letters(alpha, pw);
      Trace t = Trace::from_letters(alpha, tw);
      expected = !factor_occurrences_oracle(p, t).empty() || p.is_empty();
    }
    bool got;
    try {
      got = is_factor(patt, text, kBackend);
    } catch (const ValidationError&) {
      continue;  // inadmissible instance
    }
    ++admissible;
    CHECK(got == expected);
    if (expected) ++positives;
  }
  CHECK(admissible > 150);
  CHECK(positives > 30);
}

TEST_CASE("every boundary occurrence is classified single or periodic") {
  std::mt19937_64 rng(83);
  int instances = 0;
  for (int round = 0; round < 400; ++round) {
    auto alpha = random_alphabet(rng, 3);
    auto tw = random_word(rng, alpha, 12);
    auto pw = random_word(rng, alpha, 6);
    if (tw.size() < 2 || pw.size() < 2) continue;
    auto text = ct(random_slp_for(rng, alpha, tw));
    auto patt = ct(random_slp_for(rng, alpha, pw));

    std::unique_ptr<MatchInstance> inst;
    try {
      // Only connected full-alphabet instances here.
      inst = std::make_unique<MatchInstance>(text, patt, kBackend);
    } catch (const ValidationError&) {
      continue;
    }
    ++instances;

    Trace pat_trace = Trace::from_letters(alpha, pw);
    Trace txt_trace = Trace::from_letters(alpha, tw);
    for (Slp::NtId x : inst->candidate_nonterminals()) {
      std::set<std::vector<uint64_t>> got = as_set(inst->single_occurrences(x));
      if (auto periodic = inst->periodic_at_cut(x)) {
        for (const auto& p : periodic->enumerate()) got.insert(p.counts);
      }

      Trace sub = Trace::from_letters(alpha, text.slp.rooted_at(x).decompress());
      auto left = text.slp.parikh(text.slp.production(x).left);
      std::vector<uint64_t> left_counts(left.begin(), left.end());
      std::set<std::vector<uint64_t>> expected;
      for (const auto& o :
           at_cut_occurrences_oracle(pat_trace, sub, left_counts)) {
        // Project onto the instance support (all text letters).
        std::vector<uint64_t> v;
        for (Letter a : inst->component()) v.push_back(*o.count_of(a));
        expected.insert(v);
      }
      CHECK(got == expected);
    }
  }
  CHECK(instances > 60);
}
