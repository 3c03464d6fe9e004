#include "raag/ctrace.hpp"

#include <algorithm>

#include "raag/errors.hpp"

namespace raag {

namespace {

void require_same_alphabet(const CompressedTrace& x, const CompressedTrace& y) {
  if (!x.alphabet().same_as(y.alphabet()))
    throw ValidationError("ctrace: operands live over different alphabets");
}

bool alph_independent(const CompressedTrace& x, const CompressedTrace& y) {
  const IndependenceAlphabet& alpha = x.alphabet();
  auto px = x.slp.parikh(), py = y.slp.parikh();
  for (uint32_t a = 0; a < px.size(); ++a) {
    if (px[a] == 0) continue;
    for (uint32_t b = 0; b < py.size(); ++b) {
      if (py[b] == 0) continue;
      if (alpha.dependent(Letter(a), Letter(b))) return false;
    }
  }
  return true;
}

}  // namespace

CompressedTrace ct(Slp s) { return CompressedTrace{std::move(s)}; }

CompressedTrace ct_from_word(const IndependenceAlphabet& alphabet,
                             std::span<const Letter> w) {
  return CompressedTrace{Slp::from_word(alphabet, w)};
}

CompressedTrace ct_from_trace(const Trace& t) {
  return ct_from_word(t.alphabet(), t.word());
}

CompressedTrace inverse(const CompressedTrace& t) {
  return CompressedTrace{inverse_slp(t.slp)};
}

Trace to_explicit(const CompressedTrace& t, const WordBackend& backend) {
  return Trace::from_letters(t.alphabet(), t.slp.decompress(backend));
}

bool trace_equal(const CompressedTrace& x, const CompressedTrace& y,
                 const WordBackend& backend) {
  require_same_alphabet(x, y);
  if (x.length() != y.length()) return false;
  auto px = x.slp.parikh(), py = y.slp.parikh();
  if (!std::equal(px.begin(), px.end(), py.begin(), py.end())) return false;
  return to_explicit(x, backend) == to_explicit(y, backend);
}

CompressedTrace r_reduce(const CompressedTrace& t, const WordBackend& backend) {
  LetterWord nf = nf_r_word(t.alphabet(), t.slp.decompress(backend));
  return ct_from_word(t.alphabet(), nf);
}

bool is_trivial(const CompressedTrace& t, const WordBackend& backend) {
  return r_reduce(t, backend).length() == 0;
}

CInfResult cinf(const CompressedTrace& x, const CompressedTrace& y,
                const WordBackend& backend) {
  require_same_alphabet(x, y);
  TraceInfDiff d = inf_diff(to_explicit(x, backend), to_explicit(y, backend));
  return {ct_from_trace(d.inf), ct_from_trace(d.left_rest),
          ct_from_trace(d.right_rest)};
}

std::optional<CompressedTrace> csup(const CompressedTrace& x,
                                    const CompressedTrace& y,
                                    const WordBackend& backend) {
  CInfResult d = cinf(x, y, backend);
  if (!alph_independent(d.left_rest, d.right_rest)) return std::nullopt;
  return ct(concat(d.inf.slp, concat(d.left_rest.slp, d.right_rest.slp)));
}

std::optional<CompressedTrace> csup_many(std::span<const CompressedTrace> xs,
                                         const WordBackend& backend) {
  if (xs.empty()) throw ValidationError("ctrace: supremum of an empty family");
  const uint64_t cap = xs.front().alphabet().base_size();
  if (xs.size() > cap)
    throw ValidationError(
        "ctrace: iterated supremum capped at one operand per base letter (" +
        std::to_string(cap) + "), got " + std::to_string(xs.size()));
  CompressedTrace acc = xs.front();
  for (size_t i = 1; i < xs.size(); ++i) {
    auto s = csup(acc, xs[i], backend);
    if (!s) return std::nullopt;
    acc = std::move(*s);
  }
  return acc;
}

CCoreResult ccore_full(const CompressedTrace& t, const WordBackend& backend) {
  CompressedTrace reduced = r_reduce(t, backend);
  CompressedTrace d = cinf(reduced, inverse(reduced), backend).inf;
  CompressedTrace conjugated =
      ct(concat(inverse_slp(d.slp), concat(reduced.slp, d.slp)));
  return {r_reduce(conjugated, backend), std::move(d)};
}

CompressedTrace ccore(const CompressedTrace& t, const WordBackend& backend) {
  return ccore_full(t, backend).core;
}

}  // namespace raag
