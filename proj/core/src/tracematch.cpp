#include "raag/tracematch.hpp"

#include <algorithm>
#include <sstream>

#include "raag/errors.hpp"

namespace raag {

namespace {

std::pair<uint32_t, uint32_t> pair_key(Letter a, Letter b) {
  return {std::min(a.id(), b.id()), std::max(a.id(), b.id())};
}

std::string letters_to_string(const IndependenceAlphabet& alpha,
                              std::span<const Letter> xs) {
  std::ostringstream os;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ' ';
    os << alpha.name(xs[i]);
  }
  return os.str();
}

}  // namespace

MatchInstance::MatchInstance(CompressedTrace text, CompressedTrace pattern,
                             WordBackend backend)
    : text_(std::move(text)), pattern_(std::move(pattern)), backend_(backend) {
  if (!text_.alphabet().same_as(pattern_.alphabet()))
    throw ValidationError("match: text and pattern over different alphabets");
  const IndependenceAlphabet& alpha = text_.alphabet();
  component_ = text_.slp.alph();
  pattern_alph_ = pattern_.slp.alph();
  if (pattern_alph_.empty())
    throw ValidationError("match: instance needs a nonempty pattern");
  if (!alpha.connected(component_))
    throw ValidationError("match: instance text letters must be connected");
  for (Letter a : pattern_alph_) {
    if (!std::binary_search(component_.begin(), component_.end(), a))
      throw ValidationError("match: pattern letter " + alpha.name(a) +
                            " does not occur in the text");
  }
  if (!alpha.connected(pattern_alph_))
    throw ValidationError(
        "match: pattern letters are not dependence-connected: " +
        letters_to_string(alpha, pattern_alph_));
  for (Letter a : component_) {
    for (Letter b : component_) {
      if (a >= b || alpha.independent(a, b)) continue;
      bool meets = std::binary_search(pattern_alph_.begin(),
                                      pattern_alph_.end(), a) ||
                   std::binary_search(pattern_alph_.begin(),
                                      pattern_alph_.end(), b);
      if (!meets)
        throw ValidationError("match: dependent pair (" + alpha.name(a) + ", " +
                              alpha.name(b) + ") misses the pattern letters");
    }
  }
}

const Slp& MatchInstance::pair_pattern(Letter a, Letter b) const {
  auto key = pair_key(a, b);
  std::lock_guard lock(cache_mutex_);
  auto it = pattern_cache_.find(key);
  if (it == pattern_cache_.end()) {
    Letter pair[2] = {a, b};
    it = pattern_cache_
             .emplace(key, std::make_unique<Slp>(project_slp(pattern_.slp, pair)))
             .first;
  }
  return *it->second;
}

const Slp& MatchInstance::pair_text(Slp::NtId x, Letter a, Letter b) const {
  auto k = pair_key(a, b);
  auto key = std::make_tuple(x, k.first, k.second);
  std::lock_guard lock(cache_mutex_);
  auto it = text_cache_.find(key);
  if (it == text_cache_.end()) {
    Letter pair[2] = {a, b};
    it = text_cache_
             .emplace(key, std::make_unique<Slp>(
                               project_slp(text_.slp.rooted_at(x), pair)))
             .first;
  }
  return *it->second;
}

std::optional<ArithProgression> MatchInstance::pair_cut_progression(
    Slp::NtId x, Letter a, Letter b) const {
  const IndependenceAlphabet& alpha = text_.alphabet();
  if (a == b || alpha.independent(a, b))
    throw ValidationError("match: pair progressions need a dependent pair");
  {
    auto k = pair_key(a, b);
    auto key = std::make_tuple(x, k.first, k.second);
    std::lock_guard lock(cache_mutex_);
    auto it = progression_cache_.find(key);
    if (it != progression_cache_.end()) return it->second;
  }

  const Slp::Production& prod = text_.slp.production(x);
  if (prod.is_terminal())
    throw ValidationError("match: cut progressions need a binary nonterminal");

  std::optional<ArithProgression> result;
  Letter pair[2] = {a, b};
  const Slp& pattern_ab = pair_pattern(a, b);
  auto yp = text_.slp.parikh(prod.left);
  auto zp = text_.slp.parikh(prod.right);
  const uint64_t ylen = yp[a.id()] + yp[b.id()];
  const uint64_t zlen = zp[a.id()] + zp[b.id()];
  if (ylen > 0 && zlen > 0 && !pattern_ab.is_empty_program()) {
    // Projection of the two children, glued so the boundary survives.
    Slp left = project_slp(text_.slp.rooted_at(prod.left), pair);
    Slp right = project_slp(text_.slp.rooted_at(prod.right), pair);
    Slp glued = concat(left, right);
    result = occurrences_at_cut_word(glued, glued.start(), pattern_ab, pair,
                                     backend_);
  }

  auto k = pair_key(a, b);
  auto key = std::make_tuple(x, k.first, k.second);
  std::lock_guard lock(cache_mutex_);
  progression_cache_.emplace(key, result);
  return result;
}

std::optional<ParikhPoint> MatchInstance::extend_single(
    Slp::NtId x, std::pair<Letter, Letter> seed_pair,
    const ParikhPoint& seed) const {
  const IndependenceAlphabet& alpha = text_.alphabet();
  auto order = alpha.dependence_order(component_, pattern_alph_, seed_pair);

  // Occurrence counts found so far, indexed by letter id.
  std::vector<uint64_t> occ(alpha.size(), 0);
  occ[seed_pair.first.id()] = *seed.count_of(seed_pair.first);
  occ[seed_pair.second.id()] = *seed.count_of(seed_pair.second);

  auto is_pattern_letter = [&](Letter c) {
    return std::binary_search(pattern_alph_.begin(), pattern_alph_.end(), c);
  };

  for (size_t i = 2; i < order.size(); ++i) {
    Letter d = order[i];
    // A pattern letter among the processed ones, dependent on d.
    std::optional<Letter> partner;
    for (size_t j = 0; j < i; ++j) {
      if (is_pattern_letter(order[j]) && alpha.dependent(order[j], d)) {
        partner = order[j];
        break;
      }
    }
    if (!partner) throw Error("match: enumeration lost the pattern letters");
    Letter c = *partner;

    // Leading count of d before the first c in the projected pattern pins
    // the d-coordinate relative to the (occ[c]+1)-th c of the projected text.
    const Slp& pat_cd = pair_pattern(c, d);
    const Slp& txt_cd = pair_text(x, c, d);
    auto lead = pat_cd.rank_before_select(c, 1, d);
    if (!lead) throw Error("match: projected pattern lost its own letter");
    auto before = txt_cd.rank_before_select(c, occ[c.id()] + 1, d);
    if (!before || *before < *lead) return std::nullopt;
    occ[d.id()] = *before - *lead;

    // Verify every processed dependent pair of d, plus the diagonal count.
    if (occ[d.id()] + pattern_.slp.parikh()[d.id()] >
        text_.slp.parikh(x)[d.id()])
      return std::nullopt;
    for (size_t j = 0; j < i; ++j) {
      Letter e = order[j];
      if (!alpha.dependent(e, d)) continue;
      const Slp& pat_ed = pair_pattern(e, d);
      const Slp& txt_ed = pair_text(x, e, d);
      const uint64_t pos = occ[e.id()] + occ[d.id()];
      if (pos + pat_ed.length() > txt_ed.length()) return std::nullopt;
      auto prefix = txt_ed.prefix_parikh(pos);
      if (prefix[e.id()] != occ[e.id()] || prefix[d.id()] != occ[d.id()])
        return std::nullopt;
      if (!occurrence_test_word(txt_ed, pat_ed, pos, backend_))
        return std::nullopt;
    }
  }

  std::vector<uint64_t> counts;
  counts.reserve(component_.size());
  for (Letter cc : component_) counts.push_back(occ[cc.id()]);
  return ParikhPoint::over(component_, counts);
}

std::vector<ParikhPoint> MatchInstance::single_occurrences(Slp::NtId x) const {
  const IndependenceAlphabet& alpha = text_.alphabet();
  std::vector<ParikhPoint> out;
  for (size_t i = 0; i < pattern_alph_.size(); ++i) {
    for (size_t j = i + 1; j < pattern_alph_.size(); ++j) {
      Letter a = pattern_alph_[i], b = pattern_alph_[j];
      if (alpha.independent(a, b)) continue;
      auto prog = pair_cut_progression(x, a, b);
      if (!prog) continue;
      for (const ParikhPoint& seed : {prog->first(), prog->last()}) {
        auto full = extend_single(x, {a, b}, seed);
        if (full && std::find(out.begin(), out.end(), *full) == out.end())
          out.push_back(*full);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ArithProgression> MatchInstance::periodic_at_cut(
    Slp::NtId x) const {
  const IndependenceAlphabet& alpha = text_.alphabet();
  auto order = alpha.dependence_order(component_, pattern_alph_);
  const Slp::Production& prod = text_.slp.production(x);
  if (prod.is_terminal())
    throw ValidationError("match: cut occurrences need a binary nonterminal");

  // Occurrences of the first letter's projection straddling its boundary.
  Letter a1 = order[0];
  const uint64_t m1 = pattern_.slp.parikh()[a1.id()];
  const uint64_t total = text_.slp.parikh(x)[a1.id()];
  const uint64_t cut = text_.slp.parikh(prod.left)[a1.id()];
  if (m1 == 0 || cut == 0 || total < m1) return std::nullopt;
  const uint64_t lo = cut + 1 > m1 ? cut + 1 - m1 : 0;
  const uint64_t hi = std::min(cut - 1, total - m1);
  if (lo > hi) return std::nullopt;
  Letter support1[1] = {a1};
  uint64_t lo_arr[1] = {lo}, one_arr[1] = {1};
  ArithProgression acc = ArithProgression::make(
      ParikhPoint::over(support1, lo_arr), ParikhPoint::over(support1, one_arr),
      hi - lo);

  auto in_pattern = [&](Letter c) {
    return std::binary_search(pattern_alph_.begin(), pattern_alph_.end(), c);
  };

  for (size_t i = 1; i < order.size(); ++i) {
    Letter a = order[i];
    for (size_t j = 0; j < i; ++j) {
      Letter b = order[j];
      if (!alpha.dependent(a, b)) continue;
      auto prog = pair_cut_progression(x, a, b);
      if (!prog) return std::nullopt;
      if (in_pattern(a) && in_pattern(b)) {
        auto trimmed = prog->without_ends();
        if (!trimmed) return std::nullopt;
        prog = trimmed;
      }
      auto joined = amalgamate(acc, *prog);
      if (!joined) return std::nullopt;
      acc = std::move(*joined);
    }
  }
  return acc;
}

namespace {

// Pull singles lying arithmetically adjacent to (or inside) the periodic
// progression into it; leftovers stay as their own singleton progressions.
std::vector<ArithProgression> merge_families(
    std::vector<ParikhPoint> singles, std::optional<ArithProgression> periodic) {
  std::vector<ArithProgression> out;
  if (periodic) {
    ArithProgression acc = *periodic;
    auto moving = [&acc] {
      return std::any_of(acc.delta.counts.begin(), acc.delta.counts.end(),
                         [](uint64_t c) { return c != 0; });
    };
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = singles.begin(); it != singles.end(); ++it) {
        const ParikhPoint& p = *it;
        if (acc.contains(p)) {
          singles.erase(it);
          changed = true;
          break;
        }
        if (!p.same_support(acc.init) || !moving()) continue;
        bool is_before = true, is_after = true;
        ParikhPoint last = acc.last();
        for (size_t k = 0; k < p.counts.size(); ++k) {
          if (p.counts[k] + acc.delta.counts[k] != acc.init.counts[k])
            is_before = false;
          if (last.counts[k] + acc.delta.counts[k] != p.counts[k])
            is_after = false;
        }
        if (is_before) {
          acc = ArithProgression::make(p, acc.delta, acc.steps + 1);
        } else if (is_after) {
          acc = ArithProgression::make(acc.init, acc.delta, acc.steps + 1);
        } else {
          continue;
        }
        singles.erase(it);
        changed = true;
        break;
      }
    }
    out.push_back(acc);
  }
  for (ParikhPoint& p : singles)
    out.push_back(ArithProgression::singleton(std::move(p)));
  return out;
}

struct ComponentOutcome {
  bool matched = false;
  MatchWitness witness;
};

ComponentOutcome run_component(const CompressedTrace& text,
                               const CompressedTrace& pattern,
                               const std::vector<Letter>& component,
                               const WordBackend& backend) {
  MatchInstance inst(text, pattern, backend);
  ComponentOutcome outcome;
  for (Slp::NtId x : inst.candidate_nonterminals()) {
    std::vector<ParikhPoint> singles = inst.single_occurrences(x);
    std::optional<ArithProgression> periodic = inst.periodic_at_cut(x);
    if (singles.empty() && !periodic) continue;
    outcome.matched = true;
    outcome.witness.component = component;
    outcome.witness.nonterminal = x;
    outcome.witness.nonterminal_name = inst.text().nt_display(x);
    outcome.witness.progressions =
        merge_families(std::move(singles), std::move(periodic));
    break;
  }
  return outcome;
}

}  // namespace

MatchResult match_with_witness(const CompressedTrace& pattern,
                               const CompressedTrace& text,
                               const WordBackend& backend) {
  if (!text.alphabet().same_as(pattern.alphabet()))
    throw ValidationError("match: text and pattern over different alphabets");
  MatchResult result;
  if (pattern.length() == 0) {
    result.is_factor = true;
    return result;
  }
  auto pp = pattern.slp.parikh();
  auto tp = text.slp.parikh();
  for (size_t i = 0; i < pp.size(); ++i) {
    if (pp[i] > tp[i]) return result;  // too few letters, not a factor
  }
  if (pattern.length() == 1) {
    result.is_factor = true;  // the letter occurs by the count check
    return result;
  }

  auto components = text.alphabet().components(text.slp.alph());
  result.is_factor = true;
  for (const auto& comp : components) {
    CompressedTrace pat_c = ct(project_slp(pattern.slp, comp));
    if (pat_c.length() == 0) continue;
    if (pat_c.length() == 1) continue;  // count check already passed
    CompressedTrace txt_c = ct(project_slp(text.slp, comp));
    ComponentOutcome outcome = run_component(txt_c, pat_c, comp, backend);
    if (!outcome.matched) {
      result.is_factor = false;
      result.witnesses.clear();
      return result;
    }
    result.witnesses.push_back(std::move(outcome.witness));
  }
  return result;
}

bool is_factor(const CompressedTrace& pattern, const CompressedTrace& text,
               const WordBackend& backend) {
  return match_with_witness(pattern, text, backend).is_factor;
}

}  // namespace raag
