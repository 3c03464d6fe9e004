#include "raag/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "raag/errors.hpp"

namespace raag {

struct IndependenceAlphabet::Data {
  std::vector<std::string> names;   // symbol index -> display name
  std::unordered_map<std::string, uint32_t> index;
  int base_size = 0;
  bool is_signed = false;
  std::vector<char> indep;          // size*size, sign-blind relation
  std::vector<std::vector<Letter>> neighbors;  // distinct dependent symbols

  mutable std::once_flag doubled_once;
  mutable std::shared_ptr<const Data> doubled;

  int size() const { return static_cast<int>(names.size()); }
  bool indep_at(uint32_t x, uint32_t y) const { return indep[x * names.size() + y] != 0; }
};

namespace {

bool valid_token(std::string_view tok) {
  if (tok.empty()) return false;
  for (char c : tok) {
    if (!(std::islower(static_cast<unsigned char>(c)) ||
          std::isdigit(static_cast<unsigned char>(c)) || c == '_')) {
      return false;
    }
  }
  return true;
}

void finish(IndependenceAlphabet::Data& d) {
  const int m = d.size();
  d.neighbors.assign(m, {});
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      if (x != y && !d.indep_at(x, y)) d.neighbors[x].push_back(Letter(y));
    }
  }
  for (int x = 0; x < m; ++x) d.index.emplace(d.names[x], x);
}

}  // namespace

const IndependenceAlphabet::Data& IndependenceAlphabet::data() const {
  if (!data_) throw ValidationError("alphabet: use of an empty alphabet handle");
  return *data_;
}

IndependenceAlphabet IndependenceAlphabet::build(
    const std::vector<std::string>& letters,
    const std::vector<std::pair<std::string, std::string>>& independent_pairs) {
  auto d = std::make_shared<Data>();
  d->base_size = static_cast<int>(letters.size());
  d->is_signed = false;
  std::unordered_map<std::string, uint32_t> seen;
  for (const auto& tok : letters) {
    if (!valid_token(tok))
      throw ValidationError("alphabet: invalid letter token '" + tok + "'");
    if (!seen.emplace(tok, seen.size()).second)
      throw ValidationError("alphabet: duplicate letter '" + tok + "'");
    d->names.push_back(tok);
  }
  const size_t m = d->names.size();
  d->indep.assign(m * m, 0);
  for (const auto& [a, b] : independent_pairs) {
    auto ia = seen.find(a);
    auto ib = seen.find(b);
    if (ia == seen.end())
      throw ValidationError("alphabet: unknown letter '" + a + "' in independence pair");
    if (ib == seen.end())
      throw ValidationError("alphabet: unknown letter '" + b + "' in independence pair");
    if (ia->second == ib->second)
      throw ValidationError("alphabet: reflexive independence pair (" + a + ", " + a + ")");
    d->indep[ia->second * m + ib->second] = 1;
    d->indep[ib->second * m + ia->second] = 1;
  }
  finish(*d);
  return IndependenceAlphabet(std::move(d));
}

IndependenceAlphabet IndependenceAlphabet::doubled() const {
  const Data& base = data();
  if (base.is_signed)
    throw ValidationError("alphabet: cannot double a signed alphabet");
  std::call_once(base.doubled_once, [&base]() {
    auto d = std::make_shared<Data>();
    d->base_size = base.base_size;
    d->is_signed = true;
    for (const auto& n : base.names) {
      d->names.push_back(n);
      d->names.push_back(n + "^-1");
    }
    const size_t m = d->names.size();
    d->indep.assign(m * m, 0);
    for (size_t x = 0; x < m; ++x) {
      for (size_t y = 0; y < m; ++y) {
        d->indep[x * m + y] = base.indep_at(x / 2, y / 2) ? 1 : 0;
      }
    }
    finish(*d);
    base.doubled = std::move(d);
  });
  return IndependenceAlphabet(base.doubled);
}

int IndependenceAlphabet::size() const { return data().size(); }
int IndependenceAlphabet::base_size() const { return data().base_size; }
bool IndependenceAlphabet::is_signed() const { return data().is_signed; }

std::vector<Letter> IndependenceAlphabet::symbols() const {
  std::vector<Letter> out;
  out.reserve(size());
  for (int i = 0; i < size(); ++i) out.push_back(Letter(i));
  return out;
}

const std::string& IndependenceAlphabet::name(Letter x) const {
  const Data& d = data();
  if (x.id() >= d.names.size())
    throw ValidationError("alphabet: letter id out of range");
  return d.names[x.id()];
}

std::string_view IndependenceAlphabet::base_name(Letter x) const {
  const Data& d = data();
  uint32_t base = d.is_signed ? x.id() / 2 : x.id();
  if (base >= static_cast<uint32_t>(d.base_size))
    throw ValidationError("alphabet: letter id out of range");
  return d.names[d.is_signed ? base * 2 : base];
}

int IndependenceAlphabet::sign(Letter x) const {
  const Data& d = data();
  if (x.id() >= d.names.size())
    throw ValidationError("alphabet: letter id out of range");
  return (d.is_signed && (x.id() & 1)) ? -1 : +1;
}

Letter IndependenceAlphabet::inverse(Letter x) const {
  const Data& d = data();
  if (!d.is_signed)
    throw ValidationError("alphabet: inverse requires a signed alphabet");
  if (x.id() >= d.names.size())
    throw ValidationError("alphabet: letter id out of range");
  return Letter(x.id() ^ 1u);
}

LetterWord IndependenceAlphabet::inverse_word(std::span<const Letter> w) const {
  LetterWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

std::optional<Letter> IndependenceAlphabet::find(std::string_view token) const {
  const Data& d = data();
  auto it = d.index.find(std::string(token));
  if (it == d.index.end()) return std::nullopt;
  return Letter(it->second);
}

Letter IndependenceAlphabet::parse_letter(std::string_view token) const {
  auto x = find(token);
  if (!x)
    throw ValidationError("alphabet: unknown letter '" + std::string(token) + "'");
  return *x;
}

bool IndependenceAlphabet::independent(Letter x, Letter y) const {
  const Data& d = data();
  if (x.id() >= d.names.size() || y.id() >= d.names.size())
    throw ValidationError("alphabet: letter id out of range");
  return d.indep_at(x.id(), y.id());
}

const std::vector<Letter>& IndependenceAlphabet::dependence_neighbors(Letter x) const {
  const Data& d = data();
  if (x.id() >= d.names.size())
    throw ValidationError("alphabet: letter id out of range");
  return d.neighbors[x.id()];
}

bool IndependenceAlphabet::connected(std::span<const Letter> subset) const {
  return components(subset).size() <= 1;
}

std::vector<std::vector<Letter>> IndependenceAlphabet::components(
    std::span<const Letter> subset) const {
  const Data& d = data();
  std::vector<Letter> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Letter x : sorted) {
    if (x.id() >= d.names.size())
      throw ValidationError("alphabet: letter id out of range");
  }
  std::vector<std::vector<Letter>> out;
  std::vector<char> used(sorted.size(), 0);
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (used[i]) continue;
    std::vector<Letter> comp{sorted[i]};
    used[i] = 1;
    for (size_t head = 0; head < comp.size(); ++head) {
      for (size_t j = 0; j < sorted.size(); ++j) {
        if (!used[j] && dependent(comp[head], sorted[j])) {
          used[j] = 1;
          comp.push_back(sorted[j]);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<Letter> IndependenceAlphabet::dependence_order(
    std::span<const Letter> domain, std::span<const Letter> priority,
    std::optional<std::pair<Letter, Letter>> seed) const {
  std::vector<Letter> dom(domain.begin(), domain.end());
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  std::vector<char> in_dom(size(), 0), in_prio(size(), 0), chosen(size(), 0);
  for (Letter x : dom) in_dom[x.id()] = 1;
  for (Letter x : priority) {
    if (x.id() >= static_cast<uint32_t>(size()) || !in_dom[x.id()])
      throw ValidationError("dependence_order: priority letter outside the domain");
    in_prio[x.id()] = 1;
  }

  std::vector<Letter> order;
  order.reserve(dom.size());
  auto take = [&](Letter x) {
    chosen[x.id()] = 1;
    order.push_back(x);
  };

  if (seed) {
    auto [s1, s2] = *seed;
    if (!in_prio[s1.id()] || !in_prio[s2.id()])
      throw ValidationError("dependence_order: seed letters must lie in the priority set");
    if (s1 == s2 || independent(s1, s2))
      throw ValidationError("dependence_order: seed must be a dependence edge");
    take(s1);
    take(s2);
  }

  auto connects = [&](Letter x) {
    if (order.empty()) return true;
    for (Letter y : order) {
      if (dependent(x, y)) return true;
    }
    return false;
  };

  auto stuck = [&](bool priority_phase) {
    std::ostringstream os;
    os << "dependence_order: dependence graph is disconnected; unreachable "
       << (priority_phase ? "priority " : "") << "letters:";
    for (Letter x : dom) {
      if (!chosen[x.id()] && (!priority_phase || in_prio[x.id()]))
        os << ' ' << name(x);
    }
    throw ValidationError(os.str());
  };

  for (bool priority_phase : {true, false}) {
    for (;;) {
      Letter next;
      bool found = false;
      for (Letter x : dom) {
        if (chosen[x.id()]) continue;
        if (priority_phase != static_cast<bool>(in_prio[x.id()])) continue;
        if (connects(x)) {
          next = x;
          found = true;
          break;
        }
      }
      if (!found) {
        bool remaining = false;
        for (Letter x : dom) {
          if (!chosen[x.id()] && priority_phase == static_cast<bool>(in_prio[x.id()]))
            remaining = true;
        }
        if (remaining) stuck(priority_phase);
        break;
      }
      take(next);
    }
  }
  return order;
}

std::vector<Letter> IndependenceAlphabet::dependence_order(
    std::span<const Letter> priority,
    std::optional<std::pair<Letter, Letter>> seed) const {
  auto all = symbols();
  return dependence_order(all, priority, seed);
}

}  // namespace raag
