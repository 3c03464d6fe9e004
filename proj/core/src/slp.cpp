#include "raag/slp.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "raag/errors.hpp"

namespace raag {

namespace {

constexpr uint64_t kMaxLength = uint64_t{1} << 62;

uint64_t checked_add(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  if (s < a || s > kMaxLength)
    throw ValidationError("slp: derived word longer than 2^62 letters");
  return s;
}

void require_same_alphabet(const Slp& x, const Slp& y) {
  if (!x.alphabet().same_as(y.alphabet()))
    throw ValidationError("slp: operands live over different alphabets");
}

}  // namespace

struct Slp::Builder {
  const IndependenceAlphabet* alphabet;
  std::vector<Production> prods;
  std::vector<std::string> names;

  explicit Builder(const Slp& base)
      : alphabet(&base.alphabet_), prods(base.prods_), names(base.names_) {
    if (!names.empty()) names.resize(prods.size());
  }
  explicit Builder(const IndependenceAlphabet& a) : alphabet(&a) {}

  NtId add_terminal(Letter x) {
    prods.push_back(Production{-1, -1, x});
    if (!names.empty()) names.emplace_back();
    return static_cast<NtId>(prods.size() - 1);
  }
  NtId add_binary(NtId l, NtId r) {
    prods.push_back(Production{l, r, Letter{}});
    if (!names.empty()) names.emplace_back();
    return static_cast<NtId>(prods.size() - 1);
  }

  Slp build(NtId start) && {
    Slp out;
    out.alphabet_ = *alphabet;
    out.prods_ = std::move(prods);
    out.names_ = std::move(names);
    out.start_ = start;
    out.seal();
    return out;
  }
};

// Drops unreachable nonterminals, renumbers children-first, and fills the
// length/letter-count caches.
void Slp::seal() {
  const int m = alphabet_.size();
  empty_parikh_.assign(m, 0);
  if (start_ < 0) {
    prods_.clear();
    names_.clear();
    lengths_.clear();
    parikhs_.clear();
    return;
  }
  if (start_ >= static_cast<NtId>(prods_.size()))
    throw ValidationError("slp: start symbol out of range");

  // Iterative post-order from the start symbol; also detects cycles.
  std::vector<int8_t> state(prods_.size(), 0);  // 0 new, 1 open, 2 done
  std::vector<NtId> order;
  order.reserve(prods_.size());
  std::vector<std::pair<NtId, int>> stack{{start_, 0}};
  while (!stack.empty()) {
    auto& [x, phase] = stack.back();
    if (x < 0 || x >= static_cast<NtId>(prods_.size()))
      throw ValidationError("slp: production refers to an unknown nonterminal");
    const Production& p = prods_[x];
    if (phase == 0) {
      if (state[x] == 1) throw ValidationError("slp: cyclic derivation");
      if (state[x] == 2) {
        stack.pop_back();
        continue;
      }
      state[x] = 1;
      phase = 1;
      if (!p.is_terminal()) {
        stack.push_back({p.left, 0});
      }
    } else if (phase == 1) {
      phase = 2;
      if (!p.is_terminal()) {
        stack.push_back({p.right, 0});
      }
    } else {
      state[x] = 2;
      order.push_back(x);
      stack.pop_back();
    }
  }

  std::vector<NtId> remap(prods_.size(), -1);
  std::vector<Production> prods;
  std::vector<std::string> names;
  prods.reserve(order.size());
  for (NtId x : order) {
    remap[x] = static_cast<NtId>(prods.size());
    Production p = prods_[x];
    if (!p.is_terminal()) {
      p.left = remap[p.left];
      p.right = remap[p.right];
    } else if (p.terminal.id() >= static_cast<uint32_t>(m)) {
      throw ValidationError("slp: terminal letter outside the alphabet");
    }
    prods.push_back(p);
    if (!names_.empty()) names.push_back(names_[x]);
  }
  prods_ = std::move(prods);
  names_ = std::move(names);
  start_ = remap[start_];

  lengths_.assign(prods_.size(), 0);
  parikhs_.assign(prods_.size() * m, 0);
  for (size_t x = 0; x < prods_.size(); ++x) {
    const Production& p = prods_[x];
    uint64_t* row = &parikhs_[x * m];
    if (p.is_terminal()) {
      lengths_[x] = 1;
      row[p.terminal.id()] = 1;
    } else {
      lengths_[x] = checked_add(lengths_[p.left], lengths_[p.right]);
      const uint64_t* l = &parikhs_[p.left * m];
      const uint64_t* r = &parikhs_[p.right * m];
      for (int i = 0; i < m; ++i) row[i] = checked_add(l[i], r[i]);
    }
  }
}

Slp Slp::empty(IndependenceAlphabet alphabet) {
  Slp s;
  s.alphabet_ = std::move(alphabet);
  s.start_ = -1;
  s.seal();
  return s;
}

Slp Slp::letter(const IndependenceAlphabet& alphabet, Letter x) {
  Builder b(alphabet);
  NtId t = b.add_terminal(x);
  return std::move(b).build(t);
}

Slp Slp::from_word(const IndependenceAlphabet& alphabet,
                   std::span<const Letter> w) {
  if (w.empty()) return empty(alphabet);
  Builder b(alphabet);
  std::vector<NtId> leaf_of(alphabet.size(), -1);
  std::vector<NtId> nodes;
  nodes.reserve(w.size());
  for (Letter x : w) {
    if (x.id() >= static_cast<uint32_t>(alphabet.size()))
      throw ValidationError("slp: letter outside the alphabet");
    if (leaf_of[x.id()] < 0) leaf_of[x.id()] = b.add_terminal(x);
    nodes.push_back(leaf_of[x.id()]);
  }
  // Balanced pairwise combine keeps the depth logarithmic.
  while (nodes.size() > 1) {
    std::vector<NtId> next;
    next.reserve((nodes.size() + 1) / 2);
    for (size_t i = 0; i + 1 < nodes.size(); i += 2)
      next.push_back(b.add_binary(nodes[i], nodes[i + 1]));
    if (nodes.size() % 2) next.push_back(nodes.back());
    nodes = std::move(next);
  }
  return std::move(b).build(nodes[0]);
}

Slp Slp::from_productions(const IndependenceAlphabet& alphabet,
                          std::vector<Production> productions, NtId start,
                          std::vector<std::string> names) {
  Slp s;
  s.alphabet_ = alphabet;
  s.prods_ = std::move(productions);
  if (!names.empty()) names.resize(s.prods_.size());
  s.names_ = std::move(names);
  s.start_ = start;
  s.seal();
  return s;
}

const Slp::Production& Slp::production(NtId x) const {
  if (x < 0 || x >= static_cast<NtId>(prods_.size()))
    throw ValidationError("slp: nonterminal out of range");
  return prods_[x];
}

std::string Slp::nt_display(NtId x) const {
  if (x >= 0 && static_cast<size_t>(x) < names_.size() && !names_[x].empty())
    return names_[x];
  return "#" + std::to_string(x);
}

std::vector<Slp::NtId> Slp::binary_nonterminals() const {
  std::vector<NtId> out;
  for (size_t x = 0; x < prods_.size(); ++x)
    if (!prods_[x].is_terminal()) out.push_back(static_cast<NtId>(x));
  return out;
}

uint64_t Slp::length() const { return start_ < 0 ? 0 : lengths_[start_]; }

uint64_t Slp::length(NtId x) const {
  if (x < 0 || x >= static_cast<NtId>(prods_.size()))
    throw ValidationError("slp: nonterminal out of range");
  return lengths_[x];
}

std::span<const uint64_t> Slp::parikh() const {
  if (start_ < 0) return empty_parikh_;
  return parikh(start_);
}

std::span<const uint64_t> Slp::parikh(NtId x) const {
  if (x < 0 || x >= static_cast<NtId>(prods_.size()))
    throw ValidationError("slp: nonterminal out of range");
  const size_t m = alphabet_.size();
  return {parikhs_.data() + x * m, m};
}

std::vector<Letter> Slp::alph() const {
  std::vector<Letter> out;
  const auto& p = parikh();
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) out.push_back(Letter(static_cast<uint32_t>(i)));
  return out;
}

Letter Slp::letter_at(uint64_t i) const {
  if (i < 1 || i > length())
    throw ValidationError("slp: position out of range");
  NtId x = start_;
  for (;;) {
    const Production& p = prods_[x];
    if (p.is_terminal()) return p.terminal;
    if (i <= lengths_[p.left]) {
      x = p.left;
    } else {
      i -= lengths_[p.left];
      x = p.right;
    }
  }
}

std::vector<uint64_t> Slp::prefix_parikh(uint64_t pos) const {
  if (start_ < 0) {
    if (pos != 0) throw ValidationError("slp: position out of range");
    return empty_parikh_;
  }
  return prefix_parikh(start_, pos);
}

std::vector<uint64_t> Slp::prefix_parikh(NtId under, uint64_t pos) const {
  const int m = alphabet_.size();
  if (pos > length(under)) throw ValidationError("slp: position out of range");
  std::vector<uint64_t> acc(m, 0);
  NtId x = under;
  while (pos > 0) {
    const Production& p = prods_[x];
    if (p.is_terminal()) {
      acc[p.terminal.id()] += 1;
      break;
    }
    if (pos <= lengths_[p.left]) {
      x = p.left;
    } else {
      const uint64_t* row = &parikhs_[p.left * m];
      for (int i = 0; i < m; ++i) acc[i] += row[i];
      pos -= lengths_[p.left];
      x = p.right;
    }
    if (pos == lengths_[x]) {
      const uint64_t* row = &parikhs_[x * m];
      for (int i = 0; i < m; ++i) acc[i] += row[i];
      break;
    }
  }
  return acc;
}

std::optional<uint64_t> Slp::rank_before_select(Letter select, uint64_t m,
                                                Letter count) const {
  if (m == 0) throw ValidationError("slp: occurrence index must be positive");
  if (select.id() >= static_cast<uint32_t>(alphabet_.size()) ||
      count.id() >= static_cast<uint32_t>(alphabet_.size()))
    throw ValidationError("slp: letter outside the alphabet");
  if (start_ < 0) return std::nullopt;
  const int cols = alphabet_.size();
  if (parikhs_[start_ * cols + select.id()] < m) return std::nullopt;
  NtId x = start_;
  uint64_t acc = 0;
  for (;;) {
    const Production& p = prods_[x];
    if (p.is_terminal()) return acc;
    uint64_t in_left = parikhs_[p.left * cols + select.id()];
    if (m <= in_left) {
      x = p.left;
    } else {
      m -= in_left;
      acc += parikhs_[p.left * cols + count.id()];
      x = p.right;
    }
  }
}

Slp Slp::substring(uint64_t i, uint64_t j) const {
  if (start_ < 0) {
    if (i == 1 && j == 0) return *this;
    throw ValidationError("slp: substring range out of bounds");
  }
  return substring(start_, i, j);
}

Slp Slp::substring(NtId under, uint64_t i, uint64_t j) const {
  uint64_t n = length(under);
  if (i < 1 || i > j + 1 || j > n)
    throw ValidationError("slp: substring range out of bounds");
  if (i == j + 1) return empty(alphabet_);
  Builder b(*this);
  std::vector<uint64_t> lens = lengths_;
  // New nodes created by the prefix pass derive suffixes of known lengths;
  // track lengths alongside.
  struct Grow {
    Builder& b;
    std::vector<uint64_t>& lens;
    // Productions are copied by value: add_binary may reallocate b.prods.
    NtId prefix(NtId x, uint64_t k) {
      if (k == lens[x]) return x;
      const Production p = b.prods[x];
      if (k <= lens[p.left]) return prefix(p.left, k);
      NtId rest = prefix(p.right, k - lens[p.left]);
      NtId nt = b.add_binary(p.left, rest);
      lens.push_back(lens[p.left] + lens[rest]);
      return nt;
    }
    NtId suffix(NtId x, uint64_t k) {
      if (k == lens[x]) return x;
      const Production p = b.prods[x];
      if (k <= lens[p.right]) return suffix(p.right, k);
      NtId rest = suffix(p.left, k - lens[p.right]);
      NtId nt = b.add_binary(rest, p.right);
      lens.push_back(lens[rest] + lens[p.right]);
      return nt;
    }
  } grow{b, lens};
  NtId pref = grow.prefix(under, j);
  NtId result = grow.suffix(pref, j - i + 1);
  return std::move(b).build(result);
}

Slp Slp::rooted_at(NtId x) const {
  if (x < 0 || x >= static_cast<NtId>(prods_.size()))
    throw ValidationError("slp: nonterminal out of range");
  Slp out;
  out.alphabet_ = alphabet_;
  out.prods_ = prods_;
  out.names_ = names_;
  out.start_ = x;
  out.seal();
  return out;
}

std::vector<Letter> Slp::decompress(uint64_t guard) const {
  if (length() > guard)
    throw ResourceLimitError(
        "slp: word of " + std::to_string(length()) +
        " letters exceeds the decompression guard of " + std::to_string(guard));
  std::vector<Letter> out;
  out.reserve(length());
  if (start_ < 0) return out;
  std::vector<NtId> stack{start_};
  while (!stack.empty()) {
    NtId x = stack.back();
    stack.pop_back();
    const Production& p = prods_[x];
    if (p.is_terminal()) {
      out.push_back(p.terminal);
    } else {
      stack.push_back(p.right);
      stack.push_back(p.left);
    }
  }
  return out;
}

std::vector<Letter> Slp::decompress(const WordBackend& backend) const {
  return decompress(backend.decompress_guard);
}

Slp concat(const Slp& x, const Slp& y) {
  require_same_alphabet(x, y);
  if (x.is_empty_program()) return y;
  if (y.is_empty_program()) return x;
  Slp::Builder b(x);
  Slp::NtId off = static_cast<Slp::NtId>(b.prods.size());
  for (int i = 0; i < y.size(); ++i) {
    Slp::Production p = y.production(i);
    if (!p.is_terminal()) {
      p.left += off;
      p.right += off;
    }
    b.prods.push_back(p);
    if (!b.names.empty()) b.names.emplace_back();
  }
  Slp::NtId root = b.add_binary(x.start(), y.start() + off);
  return std::move(b).build(root);
}

Slp power(const Slp& x, uint64_t k) {
  if (k == 0 || x.is_empty_program()) return Slp::empty(x.alphabet());
  Slp::Builder b(x);
  Slp::NtId acc = -1;
  Slp::NtId cur = x.start();
  for (;;) {
    if (k & 1) acc = acc < 0 ? cur : b.add_binary(acc, cur);
    k >>= 1;
    if (k == 0) break;
    cur = b.add_binary(cur, cur);
  }
  return std::move(b).build(acc);
}

Slp inverse_slp(const Slp& x) {
  if (!x.alphabet().is_signed())
    throw ValidationError("slp: inversion requires a signed alphabet");
  if (x.is_empty_program()) return x;
  Slp::Builder b(x.alphabet());
  for (int i = 0; i < x.size(); ++i) {
    const Slp::Production& p = x.production(i);
    if (p.is_terminal()) {
      b.add_terminal(x.alphabet().inverse(p.terminal));
    } else {
      b.add_binary(p.right, p.left);
    }
  }
  return std::move(b).build(x.start());
}

Slp project_slp(const Slp& x, std::span<const Letter> keep) {
  const int m = x.alphabet().size();
  std::vector<char> kept(m, 0);
  for (Letter a : keep) {
    if (a.id() >= static_cast<uint32_t>(m))
      throw ValidationError("slp: projection letter outside the alphabet");
    kept[a.id()] = 1;
  }
  if (x.is_empty_program()) return x;
  bool erases = false;
  const auto& counts = x.parikh();
  for (int i = 0; i < m; ++i)
    if (counts[i] > 0 && !kept[i]) erases = true;
  if (!erases) return x;

  Slp::Builder b(x.alphabet());
  std::vector<Slp::NtId> image(x.size(), -1);  // -1 = derives the empty word
  for (int i = 0; i < x.size(); ++i) {
    const Slp::Production& p = x.production(i);
    if (p.is_terminal()) {
      if (kept[p.terminal.id()]) image[i] = b.add_terminal(p.terminal);
    } else {
      Slp::NtId l = image[p.left], r = image[p.right];
      if (l < 0) {
        image[i] = r;
      } else if (r < 0) {
        image[i] = l;
      } else {
        image[i] = b.add_binary(l, r);
      }
    }
  }
  if (image[x.start()] < 0) return Slp::empty(x.alphabet());
  return std::move(b).build(image[x.start()]);
}

bool equal_words(const Slp& x, const Slp& y, const WordBackend& backend) {
  require_same_alphabet(x, y);
  if (x.length() != y.length()) return false;
  auto px = x.parikh(), py = y.parikh();
  if (!std::equal(px.begin(), px.end(), py.begin(), py.end())) return false;
  return x.decompress(backend) == y.decompress(backend);
}

bool occurrence_test_word(const Slp& t, const Slp& p, uint64_t offset,
                          const WordBackend& backend) {
  require_same_alphabet(t, p);
  if (offset > t.length() || p.length() > t.length() - offset)
    throw ValidationError("slp: occurrence window out of range");
  if (p.is_empty_program()) return true;
  Slp window = t.substring(offset + 1, offset + p.length());
  return window.decompress(backend) == p.decompress(backend);
}

std::optional<ArithProgression> occurrences_at_cut_word(
    const Slp& t, Slp::NtId x, const Slp& p, std::span<const Letter> support,
    const WordBackend& backend) {
  require_same_alphabet(t, p);
  const Slp::Production& prod = t.production(x);
  if (prod.is_terminal())
    throw ValidationError("slp: cut occurrences need a binary nonterminal");
  if (p.is_empty_program()) return std::nullopt;

  const uint64_t n = t.length(x);
  const uint64_t cut = t.length(prod.left);
  const uint64_t m = p.length();
  // Start offsets o with o < cut and o + m > cut, within the word.
  const uint64_t lo = cut + 1 > m ? cut + 1 - m : 0;
  if (cut == 0 || n < m) return std::nullopt;
  const uint64_t hi = std::min(cut - 1, n - m);
  if (lo > hi) return std::nullopt;

  // Every candidate occurrence lies inside a window of fewer than 2|p|
  // letters around the cut.
  const uint64_t wbegin = lo + 1, wend = hi + m;
  Slp window_slp = t.substring(x, wbegin, wend);
  std::vector<Letter> window = window_slp.decompress(backend);
  std::vector<Letter> pat = p.decompress(backend);

  // Knuth-Morris-Pratt over the window.
  std::vector<size_t> fail(pat.size(), 0);
  for (size_t i = 1, k = 0; i < pat.size(); ++i) {
    while (k > 0 && pat[i] != pat[k]) k = fail[k - 1];
    if (pat[i] == pat[k]) ++k;
    fail[i] = k;
  }
  std::vector<uint64_t> offsets;
  for (size_t i = 0, k = 0; i < window.size(); ++i) {
    while (k > 0 && window[i] != pat[k]) k = fail[k - 1];
    if (window[i] == pat[k]) ++k;
    if (k == pat.size()) {
      offsets.push_back(lo + (i + 1 - pat.size()));
      k = fail[k - 1];
    }
  }
  if (offsets.empty()) return std::nullopt;

  std::vector<Letter> sup(support.begin(), support.end());
  std::sort(sup.begin(), sup.end());
  sup.erase(std::unique(sup.begin(), sup.end()), sup.end());

  auto point_at = [&](uint64_t o) {
    std::vector<uint64_t> full = t.prefix_parikh(x, o);
    std::vector<uint64_t> counts;
    counts.reserve(sup.size());
    for (Letter a : sup) counts.push_back(full[a.id()]);
    return ParikhPoint::over(sup, counts);
  };

  ParikhPoint init = point_at(offsets.front());
  if (offsets.size() == 1)
    return ArithProgression::singleton(std::move(init));
  // Straddling occurrences are evenly spaced; anything else is a bug.
  uint64_t d = offsets[1] - offsets[0];
  for (size_t i = 1; i < offsets.size(); ++i) {
    if (offsets[i] - offsets[i - 1] != d)
      throw Error("slp: straddling occurrences not evenly spaced");
  }
  ParikhPoint second = point_at(offsets[1]);
  ParikhPoint delta = second;
  for (size_t i = 0; i < delta.counts.size(); ++i)
    delta.counts[i] -= init.counts[i];
  return ArithProgression::make(std::move(init), std::move(delta),
                                offsets.size() - 1);
}

}  // namespace raag
