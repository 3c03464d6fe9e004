#include "raag/trace.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "raag/errors.hpp"

namespace raag {

namespace {

constexpr size_t kOracleStateCap = 2'000'000;

void require_same_alphabet(const Trace& u, const Trace& v) {
  if (!u.alphabet().same_as(v.alphabet()))
    throw ValidationError("trace: operands live over different alphabets");
}

// Per-letter occurrence cursors over a fixed word; supports the
// "possible next letter" test used by canonicalization and the prefix walk.
class Consumer {
 public:
  Consumer(const IndependenceAlphabet& alpha, std::span<const Letter> w)
      : alpha_(&alpha), positions_(alpha.size()), consumed_(alpha.size(), 0) {
    for (size_t i = 0; i < w.size(); ++i) {
      if (w[i].id() >= static_cast<uint32_t>(alpha.size()))
        throw ValidationError("trace: letter outside the alphabet");
      positions_[w[i].id()].push_back(i);
    }
    remaining_ = w.size();
  }

  bool exhausted() const { return remaining_ == 0; }
  uint64_t consumed(Letter c) const { return consumed_[c.id()]; }
  const std::vector<uint64_t>& consumed_counts() const { return consumed_; }

  uint64_t occurrences_before(Letter e, size_t i) const {
    const auto& pos = positions_[e.id()];
    return std::lower_bound(pos.begin(), pos.end(), i) - pos.begin();
  }

  // The next unconsumed occurrence of c is a possible first letter of the
  // remaining trace.
  bool available(Letter c) const {
    const auto& pos = positions_[c.id()];
    uint64_t k = consumed_[c.id()];
    if (k >= pos.size()) return false;
    size_t i = pos[k];
    for (Letter e : alpha_->dependence_neighbors(c)) {
      if (consumed_[e.id()] < occurrences_before(e, i)) return false;
    }
    return true;
  }

  void consume(Letter c) {
    ++consumed_[c.id()];
    --remaining_;
  }

  // The least available letter, if any.
  std::optional<Letter> least_available() const {
    for (uint32_t id = 0; id < consumed_.size(); ++id) {
      if (available(Letter(id))) return Letter(id);
    }
    return std::nullopt;
  }

 private:
  const IndependenceAlphabet* alpha_;
  std::vector<std::vector<size_t>> positions_;
  std::vector<uint64_t> consumed_;
  size_t remaining_ = 0;
};

LetterWord canonical_word(const IndependenceAlphabet& alpha,
                          std::span<const Letter> w) {
  Consumer c(alpha, w);
  LetterWord out;
  out.reserve(w.size());
  while (!c.exhausted()) {
    auto x = c.least_available();
    if (!x) throw Error("trace: canonicalization stalled");
    out.push_back(*x);
    c.consume(*x);
  }
  return out;
}

// Splits w into the prefix made of the first counts[c] occurrences of every
// letter c and the remainder, both in original order.
std::pair<LetterWord, LetterWord> split_by_counts(
    std::span<const Letter> w, std::span<const uint64_t> counts) {
  std::vector<uint64_t> taken(counts.size(), 0);
  LetterWord head, tail;
  for (Letter x : w) {
    if (taken[x.id()] < counts[x.id()]) {
      ++taken[x.id()];
      head.push_back(x);
    } else {
      tail.push_back(x);
    }
  }
  return {std::move(head), std::move(tail)};
}

// Visits the letter-count vector of every prefix of w exactly once.
template <typename Fn>
void for_each_prefix_state(const IndependenceAlphabet& alpha,
                           std::span<const Letter> w, Fn&& fn) {
  std::set<std::vector<uint64_t>> seen;
  std::vector<std::vector<uint64_t>> frontier;
  Consumer base(alpha, w);
  frontier.push_back(base.consumed_counts());
  seen.insert(frontier.back());
  while (!frontier.empty()) {
    std::vector<uint64_t> counts = std::move(frontier.back());
    frontier.pop_back();
    fn(std::as_const(counts));
    Consumer c(alpha, w);
    // Fast-forward the cursors to this state.
    for (uint32_t id = 0; id < counts.size(); ++id)
      for (uint64_t k = 0; k < counts[id]; ++k) c.consume(Letter(id));
    for (uint32_t id = 0; id < counts.size(); ++id) {
      if (!c.available(Letter(id))) continue;
      std::vector<uint64_t> next = counts;
      ++next[id];
      if (seen.insert(next).second) {
        if (seen.size() > kOracleStateCap)
          throw ValidationError("trace: oracle enumeration beyond test scale");
        frontier.push_back(std::move(next));
      }
    }
  }
}

ParikhPoint full_point(const IndependenceAlphabet& alpha,
                       std::span<const uint64_t> counts) {
  std::vector<Letter> support;
  support.reserve(counts.size());
  for (uint32_t id = 0; id < counts.size(); ++id) support.push_back(Letter(id));
  return ParikhPoint::over(support, counts);
}

}  // namespace

Trace Trace::empty(IndependenceAlphabet alphabet) {
  Trace t;
  t.alphabet_ = std::move(alphabet);
  return t;
}

Trace Trace::from_letters(const IndependenceAlphabet& alphabet,
                          std::span<const Letter> w) {
  Trace t;
  t.alphabet_ = alphabet;
  t.word_ = canonical_word(alphabet, w);
  return t;
}

std::vector<Letter> Trace::alph() const {
  std::vector<char> seen(alphabet_.size(), 0);
  for (Letter x : word_) seen[x.id()] = 1;
  std::vector<Letter> out;
  for (uint32_t id = 0; id < seen.size(); ++id)
    if (seen[id]) out.push_back(Letter(id));
  return out;
}

std::vector<uint64_t> Trace::parikh() const {
  std::vector<uint64_t> counts(alphabet_.size(), 0);
  for (Letter x : word_) ++counts[x.id()];
  return counts;
}

std::vector<Letter> Trace::min_letters() const {
  Consumer c(alphabet_, word_);
  std::vector<Letter> out;
  for (uint32_t id = 0; id < static_cast<uint32_t>(alphabet_.size()); ++id)
    if (c.available(Letter(id))) out.push_back(Letter(id));
  return out;
}

std::vector<Letter> Trace::max_letters() const {
  LetterWord rev(word_.rbegin(), word_.rend());
  Consumer c(alphabet_, rev);
  std::vector<Letter> out;
  for (uint32_t id = 0; id < static_cast<uint32_t>(alphabet_.size()); ++id)
    if (c.available(Letter(id))) out.push_back(Letter(id));
  return out;
}

Trace Trace::inverse() const {
  return from_letters(alphabet_, alphabet_.inverse_word(word_));
}

Trace operator*(const Trace& u, const Trace& v) {
  require_same_alphabet(u, v);
  LetterWord w = u.word_;
  w.insert(w.end(), v.word_.begin(), v.word_.end());
  return Trace::from_letters(u.alphabet_, w);
}

bool operator==(const Trace& u, const Trace& v) {
  require_same_alphabet(u, v);
  return u.word_ == v.word_;
}

bool prefix_of(const Trace& u, const Trace& w) {
  return inf_diff(u, w).left_rest.is_empty();
}

bool independent(const Trace& u, const Trace& v) {
  require_same_alphabet(u, v);
  for (Letter a : u.alph())
    for (Letter b : v.alph())
      if (u.alphabet().dependent(a, b)) return false;
  return true;
}

TraceInfDiff inf_diff(const Trace& u, const Trace& v) {
  require_same_alphabet(u, v);
  const IndependenceAlphabet& alpha = u.alphabet();
  Consumer cu(alpha, u.word());
  Consumer cv(alpha, v.word());
  LetterWord common;
  for (;;) {
    bool took = false;
    for (uint32_t id = 0; id < static_cast<uint32_t>(alpha.size()); ++id) {
      Letter c{id};
      if (cu.available(c) && cv.available(c)) {
        cu.consume(c);
        cv.consume(c);
        common.push_back(c);
        took = true;
        break;
      }
    }
    if (!took) break;
  }
  auto [uh, ut] = split_by_counts(u.word(), cu.consumed_counts());
  auto [vh, vt] = split_by_counts(v.word(), cv.consumed_counts());
  return {Trace::from_letters(alpha, common), Trace::from_letters(alpha, ut),
          Trace::from_letters(alpha, vt)};
}

std::optional<Trace> sup(const Trace& u, const Trace& v) {
  TraceInfDiff d = inf_diff(u, v);
  if (!independent(d.left_rest, d.right_rest)) return std::nullopt;
  return d.inf * d.left_rest * d.right_rest;
}

std::optional<Trace> sup_many(std::span<const Trace> traces) {
  if (traces.empty())
    throw ValidationError("trace: supremum of an empty family");
  Trace acc = traces.front();
  for (size_t i = 1; i < traces.size(); ++i) {
    auto s = sup(acc, traces[i]);
    if (!s) return std::nullopt;
    acc = std::move(*s);
  }
  return acc;
}

LetterWord nf_r_word(const IndependenceAlphabet& alpha,
                     std::span<const Letter> w) {
  if (!alpha.is_signed())
    throw ValidationError("trace: reduction requires a signed alphabet");
  const int nb = alpha.base_size();
  struct Entry {
    uint32_t uid;
    bool is_token;
  };
  std::vector<std::vector<Entry>> stacks(nb);
  // Dependent base letters, the letter's own base excluded.
  std::vector<std::vector<int>> dep_bases(nb);
  for (int b = 0; b < nb; ++b)
    for (int c = 0; c < nb; ++c)
      if (c != b && alpha.dependent(Letter(2 * b), Letter(2 * c)))
        dep_bases[b].push_back(c);

  std::vector<Letter> token_letter(w.size());
  std::vector<char> survivor(w.size(), 1);
  for (uint32_t i = 0; i < w.size(); ++i) {
    Letter x = w[i];
    if (x.id() >= static_cast<uint32_t>(alpha.size()))
      throw ValidationError("trace: letter outside the alphabet");
    const int b = static_cast<int>(x.id() / 2);
    bool cancelled = false;
    if (!stacks[b].empty()) {
      Entry top = stacks[b].back();
      if (top.is_token && token_letter[top.uid] == alpha.inverse(x)) {
        bool visible = true;
        for (int c : dep_bases[b]) {
          if (stacks[c].empty() || stacks[c].back().is_token ||
              stacks[c].back().uid != top.uid) {
            visible = false;
            break;
          }
        }
        if (visible) {
          stacks[b].pop_back();
          for (int c : dep_bases[b]) stacks[c].pop_back();
          survivor[top.uid] = 0;
          survivor[i] = 0;
          cancelled = true;
        }
      }
    }
    if (!cancelled) {
      token_letter[i] = x;
      stacks[b].push_back({i, true});
      for (int c : dep_bases[b]) stacks[c].push_back({i, false});
    }
  }

  LetterWord out;
  out.reserve(w.size());
  for (uint32_t i = 0; i < w.size(); ++i)
    if (survivor[i]) out.push_back(w[i]);
  return out;
}

Trace nf_r(const Trace& t) {
  return Trace::from_letters(t.alphabet(), nf_r_word(t.alphabet(), t.word()));
}

bool is_irreducible(const Trace& t) {
  return nf_r_word(t.alphabet(), t.word()).size() == t.size();
}

bool is_cyclically_irreducible(const Trace& t) {
  if (!is_irreducible(t)) return false;
  auto mins = t.min_letters();
  auto inv_mins = t.inverse().min_letters();
  for (Letter a : mins)
    for (Letter b : inv_mins)
      if (a == b) return false;
  return true;
}

CoreData core_with_conjugator(const Trace& t) {
  Trace nf = nf_r(t);
  Trace d = inf_diff(nf, nf.inverse()).inf;
  Trace core = nf_r(d.inverse() * nf * d);
  return {std::move(core), std::move(d)};
}

Trace core_explicit(const Trace& t) { return core_with_conjugator(t).core; }

std::vector<ParikhPoint> factor_occurrences_oracle(const Trace& p,
                                                   const Trace& t) {
  require_same_alphabet(p, t);
  std::vector<ParikhPoint> out;
  for_each_prefix_state(t.alphabet(), t.word(), [&](const std::vector<uint64_t>& counts) {
    auto [head, tail] = split_by_counts(t.word(), counts);
    Trace rest = Trace::from_letters(t.alphabet(), tail);
    if (prefix_of(p, rest)) out.push_back(full_point(t.alphabet(), counts));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ParikhPoint> at_cut_occurrences_oracle(
    const Trace& p, const Trace& t, std::span<const uint64_t> left_counts) {
  auto all = factor_occurrences_oracle(p, t);
  auto palph = p.alph();
  auto pcounts = p.parikh();
  std::vector<ParikhPoint> out;
  for (const ParikhPoint& o : all) {
    bool starts_left = false, ends_right = false;
    for (Letter a : palph) {
      uint64_t oa = *o.count_of(a);
      if (oa < left_counts[a.id()]) starts_left = true;
      if (oa + pcounts[a.id()] > left_counts[a.id()]) ends_right = true;
    }
    if (starts_left && ends_right) out.push_back(o);
  }
  return out;
}

bool conjugate_oracle(const Trace& u, const Trace& v) {
  require_same_alphabet(u, v);
  Trace cu = core_explicit(u);
  Trace cv = core_explicit(v);
  if (cu.parikh() != cv.parikh()) return false;
  bool found = false;
  for_each_prefix_state(cu.alphabet(), cu.word(), [&](const std::vector<uint64_t>& counts) {
    if (found) return;
    auto [w1, w2] = split_by_counts(cu.word(), counts);
    LetterWord swapped = w2;
    swapped.insert(swapped.end(), w1.begin(), w1.end());
    if (Trace::from_letters(cu.alphabet(), swapped) == cv) found = true;
  });
  return found;
}

std::vector<LeviSplit> levi_decompositions(const Trace& u1, const Trace& u2,
                                           const Trace& v1, const Trace& v2) {
  require_same_alphabet(u1, u2);
  require_same_alphabet(u1, v1);
  require_same_alphabet(u1, v2);
  if (!(u1 * u2 == v1 * v2))
    throw ValidationError("levi: the two factorizations differ");
  std::vector<LeviSplit> out;
  for_each_prefix_state(u1.alphabet(), u1.word(), [&](const std::vector<uint64_t>& counts) {
    auto [xw, y1w] = split_by_counts(u1.word(), counts);
    Trace x = Trace::from_letters(u1.alphabet(), xw);
    TraceInfDiff dv = inf_diff(x, v1);
    if (!dv.left_rest.is_empty()) return;  // x not a prefix of v1
    Trace y2 = dv.right_rest;
    Trace y1 = Trace::from_letters(u1.alphabet(), y1w);
    if (!independent(y1, y2)) return;
    TraceInfDiff du = inf_diff(y2, u2);
    if (!du.left_rest.is_empty()) return;  // y2 not a prefix of u2
    Trace z = du.right_rest;
    if (!(v2 == y1 * z)) return;
    out.push_back({std::move(x), std::move(y1), std::move(y2), std::move(z)});
  });
  return out;
}

std::pair<Trace, Trace> split_independent_suffix(const Trace& t, Letter a) {
  const IndependenceAlphabet& alpha = t.alphabet();
  const LetterWord& w = t.word();
  std::vector<char> keep(w.size(), 0);
  std::vector<char> blocked(alpha.size(), 0);
  for (size_t i = w.size(); i-- > 0;) {
    Letter c = w[i];
    bool ok = alpha.independent(c, a) && !blocked[c.id()];
    if (ok) {
      for (Letter e : alpha.dependence_neighbors(c)) {
        if (blocked[e.id()]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      keep[i] = 1;
    } else {
      blocked[c.id()] = 1;
    }
  }
  LetterWord head, tail;
  for (size_t i = 0; i < w.size(); ++i)
    (keep[i] ? tail : head).push_back(w[i]);
  return {Trace::from_letters(alpha, head), Trace::from_letters(alpha, tail)};
}

}  // namespace raag
