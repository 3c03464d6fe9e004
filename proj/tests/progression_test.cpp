#include "raag/progression.hpp"

#include <set>

#include "doctest.h"
#include "raag/errors.hpp"
#include "testutil.hpp"

using namespace raag;
using namespace raag::testing;

namespace {

ParikhPoint point(std::vector<uint32_t> ids, std::vector<uint64_t> counts) {
  std::vector<Letter> support;
  for (uint32_t id : ids) support.push_back(Letter(id));
  return ParikhPoint::over(support, counts);
}

ArithProgression prog(std::vector<uint32_t> ids, std::vector<uint64_t> init,
                      std::vector<uint64_t> delta, uint64_t steps) {
  return ArithProgression::make(point(ids, init), point(ids, delta), steps);
}

}  // namespace

TEST_CASE("progression basics and degenerate forms") {
  auto p = prog({0, 1}, {2, 2}, {1, 1}, 3);
  CHECK(p.count() == 4);
  CHECK(p.first().counts == std::vector<uint64_t>{2, 2});
  CHECK(p.last().counts == std::vector<uint64_t>{5, 5});
  CHECK(p.contains(point({0, 1}, {4, 4})));
  CHECK(!p.contains(point({0, 1}, {4, 5})));
  CHECK(!p.contains(point({0, 1}, {6, 6})));

  // A singleton stores an all-zero delta; a zero delta collapses the steps.
  auto single = prog({0}, {7}, {3}, 0);
  CHECK(single.delta.counts == std::vector<uint64_t>{0});
  auto flat = prog({0}, {7}, {0}, 9);
  CHECK(flat.steps == 0);

  auto trimmed = p.without_ends();
  REQUIRE(trimmed.has_value());
  CHECK(trimmed->first().counts == std::vector<uint64_t>{3, 3});
  CHECK(trimmed->steps == 1);
  CHECK(!prog({0}, {1}, {1}, 1).without_ends().has_value());
}

TEST_CASE("amalgamation of the worked pair progressions") {
  // Letters a=0, b=1, c=2, d=3.
  auto p_ab = prog({0, 1}, {2, 2}, {1, 1}, 3);
  auto p_bc = prog({1, 2}, {1, 2}, {1, 2}, 4);
  auto p_cd = prog({2, 3}, {2, 1}, {1, 0}, 7);

  auto p_abc = amalgamate(p_ab, p_bc);
  REQUIRE(p_abc.has_value());
  CHECK(p_abc->init.counts == std::vector<uint64_t>{2, 2, 4});
  CHECK(p_abc->delta.counts == std::vector<uint64_t>{1, 1, 2});
  CHECK(p_abc->steps == 3);

  auto p_abcd = amalgamate(*p_abc, p_cd);
  REQUIRE(p_abcd.has_value());
  CHECK(p_abcd->init.counts == std::vector<uint64_t>{2, 2, 4, 1});
  CHECK(p_abcd->delta.counts == std::vector<uint64_t>{1, 1, 2, 0});
  CHECK(p_abcd->steps == 2);
}

TEST_CASE("amalgamation corner cases") {
  // Disjoint supports are not amalgamable.
  CHECK(!amalgamate(prog({0}, {1}, {1}, 2), prog({1}, {1}, {1}, 2)).has_value());

  // Incompatible parity on the shared letter.
  auto even = prog({0}, {0}, {2}, 5);
  auto odd = prog({0}, {1}, {2}, 5);
  CHECK(!amalgamate(even, odd).has_value());

  // Matching constants extend the support.
  auto fixed1 = prog({0, 1}, {3, 1}, {0, 0}, 0);
  auto fixed2 = prog({1, 2}, {1, 9}, {0, 0}, 0);
  auto joined = amalgamate(fixed1, fixed2);
  REQUIRE(joined.has_value());
  CHECK(joined->init.counts == std::vector<uint64_t>{3, 1, 9});
  CHECK(joined->steps == 0);

  // One singleton side pins the other through the shared letter.
  auto moving = prog({0, 1}, {0, 0}, {1, 2}, 9);
  auto pin = prog({1, 2}, {6, 4}, {0, 0}, 0);
  auto pinned = amalgamate(moving, pin);
  REQUIRE(pinned.has_value());
  CHECK(pinned->steps == 0);
  CHECK(pinned->init.counts == std::vector<uint64_t>{3, 6, 4});

  // A singleton with a sweeping free side stays a progression.
  auto constant = prog({0}, {5}, {0}, 0);
  auto sweep = prog({0, 1}, {5, 0}, {0, 3}, 4);
  auto swept = amalgamate(constant, sweep);
  REQUIRE(swept.has_value());
  CHECK(swept->steps == 4);
  CHECK(swept->delta.counts == std::vector<uint64_t>{0, 3});

  // Two genuinely moving sides with only constant shared letters cannot be
  // a single progression.
  auto left = prog({0, 1}, {1, 0}, {0, 2}, 3);
  auto right = prog({0, 2}, {1, 0}, {0, 5}, 3);
  CHECK_THROWS_AS(amalgamate(left, right), ValidationError);
}

TEST_CASE("amalgamation equals brute-force intersection-with-join") {
  std::mt19937_64 rng(71);
  int nonempty = 0;
  for (int round = 0; round < 3000; ++round) {
    // Random progressions over supports {0,1} and {1,2} (shared letter 1)
    // with a moving shared coordinate on at least one side.
    auto r = [&](uint64_t lo, uint64_t hi) {
      return lo + rng() % (hi - lo + 1);
    };
    auto p = prog({0, 1}, {r(0, 6), r(0, 6)}, {r(0, 3), r(1, 3)}, r(0, 6));
    auto q = prog({1, 2}, {r(0, 6), r(0, 6)}, {r(0, 3), r(0, 3)}, r(0, 6));

    std::set<std::vector<uint64_t>> expected;
    for (auto& a : p.enumerate()) {
      for (auto& b : q.enumerate()) {
        if (a.counts[1] != b.counts[0]) continue;  // shared letter 1
        expected.insert({a.counts[0], a.counts[1], b.counts[1]});
      }
    }
    std::optional<ArithProgression> got;
    bool unrepresentable = false;
    try {
      got = amalgamate(p, q);
    } catch (const ValidationError&) {
      unrepresentable = true;
    }
    if (unrepresentable) continue;  // outside the representable corner
    std::set<std::vector<uint64_t>> actual;
    if (got)
      for (auto& v : got->enumerate()) actual.insert(v.counts);
    CHECK(actual == expected);
    if (!expected.empty()) ++nonempty;
  }
  CHECK(nonempty > 100);
}

TEST_CASE("amalgamation with two shared letters") {
  std::mt19937_64 rng(73);
  int nonempty = 0;
  for (int round = 0; round < 3000; ++round) {
    auto r = [&](uint64_t lo, uint64_t hi) {
      return lo + rng() % (hi - lo + 1);
    };
    // Supports {0,1,2} and {1,2,3}: shared letters 1 and 2.
    auto p = prog({0, 1, 2}, {r(0, 4), r(0, 4), r(0, 4)},
                  {r(0, 2), r(1, 2), r(0, 2)}, r(0, 5));
    auto q = prog({1, 2, 3}, {r(0, 4), r(0, 4), r(0, 4)},
                  {r(1, 2), r(0, 2), r(0, 2)}, r(0, 5));
    std::set<std::vector<uint64_t>> expected;
    for (auto& a : p.enumerate())
      for (auto& b : q.enumerate())
        if (a.counts[1] == b.counts[0] && a.counts[2] == b.counts[1])
          expected.insert({a.counts[0], a.counts[1], a.counts[2], b.counts[2]});
    auto got = amalgamate(p, q);
    std::set<std::vector<uint64_t>> actual;
    if (got)
      for (auto& v : got->enumerate()) actual.insert(v.counts);
    CHECK(actual == expected);
    if (!expected.empty()) ++nonempty;
  }
  CHECK(nonempty > 30);
}
