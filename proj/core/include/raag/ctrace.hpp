#pragma once

#include <optional>
#include <span>

#include "raag/slp.hpp"
#include "raag/trace.hpp"

namespace raag {

/// A compressed trace: a straight-line program read as an element of the
/// trace monoid over its alphabet. Two values denote the same trace iff
/// their decompressions canonicalize identically.
struct CompressedTrace {
  Slp slp;

  const IndependenceAlphabet& alphabet() const { return slp.alphabet(); }
  uint64_t length() const { return slp.length(); }
};

CompressedTrace ct(Slp s);
CompressedTrace ct_from_word(const IndependenceAlphabet& alphabet,
                             std::span<const Letter> w);
CompressedTrace ct_from_trace(const Trace& t);
CompressedTrace inverse(const CompressedTrace& t);

/// Decompress and canonicalize (guard applies).
Trace to_explicit(const CompressedTrace& t, const WordBackend& backend);

/// Denotational trace equality.
bool trace_equal(const CompressedTrace& x, const CompressedTrace& y,
                 const WordBackend& backend);

/// A program denoting the irreducible normal form of t.
CompressedTrace r_reduce(const CompressedTrace& t, const WordBackend& backend);

/// The compressed word problem: does t denote the group identity?
bool is_trivial(const CompressedTrace& t, const WordBackend& backend);

struct CInfResult {
  CompressedTrace inf;         // x ⊓ y
  CompressedTrace left_rest;   // x \ y
  CompressedTrace right_rest;  // y \ x
};
CInfResult cinf(const CompressedTrace& x, const CompressedTrace& y,
                const WordBackend& backend);

/// Present iff the supremum exists (the two rests are independent).
std::optional<CompressedTrace> csup(const CompressedTrace& x,
                                    const CompressedTrace& y,
                                    const WordBackend& backend);

/// Left fold of csup over at most base_size() operands; the cap rules out
/// the size blow-up an unbounded fold could produce.
std::optional<CompressedTrace> csup_many(std::span<const CompressedTrace> xs,
                                         const WordBackend& backend);

struct CCoreResult {
  CompressedTrace core;
  CompressedTrace conjugator;  // d with r_reduce(t) = d * core * d^-1
};
CCoreResult ccore_full(const CompressedTrace& t, const WordBackend& backend);
/// A program denoting the cyclically irreducible core of t.
CompressedTrace ccore(const CompressedTrace& t, const WordBackend& backend);

}  // namespace raag
