#include "raag/conjugacy.hpp"

#include <algorithm>

#include "raag/errors.hpp"
#include "raag/tracematch.hpp"

namespace raag {

std::optional<ConeDecomposition> cone_decompose(const CompressedTrace& w,
                                                Letter center,
                                                const WordBackend& backend) {
  const IndependenceAlphabet& alpha = w.alphabet();
  if (!alpha.is_signed())
    throw ValidationError("cone: a signed alphabet is required");
  const uint64_t n = w.length();
  if (n % 2 == 0) return std::nullopt;
  const uint64_t mid = n / 2 + 1;
  if (w.slp.letter_at(mid) != center) return std::nullopt;
  CompressedTrace left = ct(w.slp.substring(1, mid - 1));
  CompressedTrace right = ct(w.slp.substring(mid + 1, n));
  if (!trace_equal(left, inverse(right), backend)) return std::nullopt;
  return ConeDecomposition{std::move(left), center};
}

std::optional<Slp> rsccp_solve(std::span<const Slp> letter_programs,
                               const WordBackend& backend) {
  if (letter_programs.empty())
    throw ValidationError("rsccp: at least one letter program is required");
  const IndependenceAlphabet& alpha = letter_programs.front().alphabet();
  if (!alpha.is_signed())
    throw ValidationError("rsccp: programs must live over a signed alphabet");
  if (letter_programs.size() != static_cast<size_t>(alpha.base_size()))
    throw ValidationError("rsccp: expected one program per base letter");

  std::vector<CompressedTrace> reduced;
  std::vector<CompressedTrace> witnesses;
  reduced.reserve(letter_programs.size());
  for (int i = 0; i < alpha.base_size(); ++i) {
    if (!letter_programs[i].alphabet().same_as(alpha))
      throw ValidationError("rsccp: programs live over different alphabets");
    Letter a{static_cast<uint32_t>(2 * i)};
    CompressedTrace w = r_reduce(ct(letter_programs[i]), backend);
    auto cone = cone_decompose(w, a, backend);
    if (!cone) return std::nullopt;
    reduced.push_back(std::move(w));
    witnesses.push_back(std::move(cone->v));
  }

  auto s = csup_many(witnesses, backend);
  if (!s) return std::nullopt;

  // The upper bound is necessary by construction; verify it is sufficient.
  for (int i = 0; i < alpha.base_size(); ++i) {
    Letter a{static_cast<uint32_t>(2 * i)};
    Slp check = concat(
        s->slp, concat(Slp::letter(alpha, a),
                       concat(inverse_slp(s->slp), inverse_slp(reduced[i].slp))));
    if (!is_trivial(ct(std::move(check)), backend)) return std::nullopt;
  }
  return s->slp;
}

bool ccp_decide(const Slp& x, const Slp& y, const WordBackend& backend) {
  if (!x.alphabet().same_as(y.alphabet()))
    throw ValidationError("ccp: operands live over different alphabets");
  const IndependenceAlphabet& alpha = x.alphabet();
  if (!alpha.is_signed())
    throw ValidationError("ccp: programs must live over a signed alphabet");
  CompressedTrace cx = ccore(ct(x), backend);
  CompressedTrace cy = ccore(ct(y), backend);
  auto px = cx.slp.parikh(), py = cy.slp.parikh();
  if (!std::equal(px.begin(), px.end(), py.begin(), py.end())) return false;
  if (cx.length() == 0) return true;
  // Occurrence in a bounded power; the bound is monotone, so the largest
  // admissible exponent decides.
  const uint64_t k = 2 * static_cast<uint64_t>(alpha.base_size());
  return is_factor(cx, ct(power(cy.slp, k)), backend);
}

GeneratorTable::GeneratorTable(IndependenceAlphabet base)
    : base_(std::move(base)), doubled_(base_.doubled()) {}

void GeneratorTable::define(const std::string& name,
                            const std::map<std::string, LetterWord>& images) {
  if (name.empty())
    throw ValidationError("generators: empty generator name");
  if (images_.count(name))
    throw ValidationError("generators: duplicate generator '" + name + "'");
  std::vector<LetterWord> table(base_.base_size());
  for (int i = 0; i < base_.base_size(); ++i)
    table[i] = {Letter(static_cast<uint32_t>(2 * i))};  // identity image
  for (const auto& [token, word] : images) {
    auto base_letter = base_.find(token);
    if (!base_letter)
      throw ValidationError("generators: unknown letter '" + token +
                            "' in generator '" + name + "'");
    for (Letter x : word) {
      if (x.id() >= static_cast<uint32_t>(doubled_.size()))
        throw ValidationError("generators: image letter out of range");
    }
    table[base_letter->id()] = word;
  }
  images_.emplace(name, std::move(table));
}

bool GeneratorTable::has(const std::string& name) const {
  return images_.count(name) != 0;
}

std::vector<std::string> GeneratorTable::names() const {
  std::vector<std::string> out;
  out.reserve(images_.size());
  for (const auto& [name, _] : images_) out.push_back(name);
  return out;
}

const LetterWord& GeneratorTable::image(const std::string& name,
                                        int base_index) const {
  auto it = images_.find(name);
  if (it == images_.end())
    throw ValidationError("generators: unknown generator '" + name + "'");
  return it->second.at(base_index);
}

std::vector<Slp> apply_generators(const GeneratorTable& table,
                                  std::span<const std::string> word) {
  const IndependenceAlphabet& alpha = table.doubled();
  const int nb = table.base().base_size();
  for (const auto& name : word) {
    if (!table.has(name))
      throw ValidationError("generators: unknown generator '" + name + "'");
  }

  // One shared grammar; level[x] is the nonterminal deriving the image of
  // the signed letter x under the composition of the names seen so far
  // (outermost first), kept in direct/inverse pairs.
  std::vector<Slp::Production> prods;
  auto add_terminal = [&](Letter x) {
    prods.push_back({-1, -1, x});
    return static_cast<Slp::NtId>(prods.size() - 1);
  };
  auto add_binary = [&](Slp::NtId l, Slp::NtId r) {
    prods.push_back({l, r, Letter{}});
    return static_cast<Slp::NtId>(prods.size() - 1);
  };

  std::vector<Slp::NtId> level(alpha.size());
  for (int x = 0; x < alpha.size(); ++x)
    level[x] = add_terminal(Letter(static_cast<uint32_t>(x)));

  // Apply names from the innermost (rightmost) outwards: after processing a
  // name g, level[x] derives g_outer(...g(x)...) for the suffix handled so
  // far, so the loop walks the word right to left.
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    std::vector<Slp::NtId> next(alpha.size(), -1);
    for (int i = 0; i < nb; ++i) {
      const LetterWord& img = table.image(*it, i);
      // Substitute the current level into the image word, building the
      // direct and the mirrored inverse chain together.
      Slp::NtId direct = -1, inv = -1;
      for (Letter y : img) {
        Slp::NtId dy = level[y.id()];
        Slp::NtId iy = level[alpha.inverse(y).id()];
        direct = direct < 0 ? dy : add_binary(direct, dy);
        inv = inv < 0 ? iy : add_binary(iy, inv);
      }
      if (direct < 0)
        throw ValidationError("generators: empty image is not an automorphism image");
      next[2 * i] = direct;
      next[2 * i + 1] = inv;
    }
    level = std::move(next);
  }

  std::vector<Slp> out;
  out.reserve(nb);
  for (int i = 0; i < nb; ++i) {
    out.push_back(Slp::from_productions(alpha, prods, level[2 * i]));
  }
  return out;
}

bool out_word_problem(const GeneratorTable& table,
                      std::span<const std::string> word,
                      const WordBackend& backend) {
  std::vector<Slp> programs = apply_generators(table, word);
  return rsccp_solve(programs, backend).has_value();
}

}  // namespace raag
