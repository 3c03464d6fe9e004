#include "raag/progression.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "raag/errors.hpp"

namespace raag {

namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 egcd(i128 a, i128 b, i128& x, i128& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  i128 x1, y1;
  i128 g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

uint64_t to_u64(i128 v, const char* what) {
  if (v < 0 || v > i128(UINT64_MAX))
    throw ValidationError(std::string("progression: ") + what + " out of range");
  return static_cast<uint64_t>(v);
}

}  // namespace

ParikhPoint ParikhPoint::over(std::span<const Letter> support,
                              std::span<const uint64_t> counts) {
  if (support.size() != counts.size())
    throw ValidationError("parikh point: support/count arity mismatch");
  ParikhPoint p;
  std::vector<size_t> idx(support.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return support[a] < support[b]; });
  for (size_t i : idx) {
    if (!p.support.empty() && p.support.back() == support[i])
      throw ValidationError("parikh point: duplicate support letter");
    p.support.push_back(support[i]);
    p.counts.push_back(counts[i]);
  }
  return p;
}

ParikhPoint ParikhPoint::zeros(std::span<const Letter> support) {
  std::vector<uint64_t> counts(support.size(), 0);
  return over(support, counts);
}

std::optional<uint64_t> ParikhPoint::count_of(Letter x) const {
  auto it = std::lower_bound(support.begin(), support.end(), x);
  if (it == support.end() || *it != x) return std::nullopt;
  return counts[static_cast<size_t>(it - support.begin())];
}

ParikhPoint ParikhPoint::project(std::span<const Letter> sub) const {
  std::vector<Letter> keep(sub.begin(), sub.end());
  std::sort(keep.begin(), keep.end());
  ParikhPoint out;
  for (size_t i = 0; i < support.size(); ++i) {
    if (std::binary_search(keep.begin(), keep.end(), support[i])) {
      out.support.push_back(support[i]);
      out.counts.push_back(counts[i]);
    }
  }
  return out;
}

std::string ParikhPoint::to_string(const IndependenceAlphabet& alpha) const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < support.size(); ++i) {
    if (i) os << ',';
    os << counts[i];
  }
  os << ')';
  (void)alpha;
  return os.str();
}

ArithProgression ArithProgression::singleton(ParikhPoint p) {
  ArithProgression a;
  a.delta = ParikhPoint::zeros(p.support);
  a.init = std::move(p);
  a.steps = 0;
  return a;
}

ArithProgression ArithProgression::make(ParikhPoint init, ParikhPoint delta,
                                        uint64_t steps) {
  if (!init.same_support(delta))
    throw ValidationError("progression: init/delta support mismatch");
  bool zero = std::all_of(delta.counts.begin(), delta.counts.end(),
                          [](uint64_t c) { return c == 0; });
  if (steps == 0 || zero) return singleton(std::move(init));
  ArithProgression a;
  a.init = std::move(init);
  a.delta = std::move(delta);
  a.steps = steps;
  return a;
}

ParikhPoint ArithProgression::at(uint64_t k) const {
  if (k > steps) throw ValidationError("progression: index beyond last member");
  ParikhPoint p = init;
  for (size_t i = 0; i < p.counts.size(); ++i) p.counts[i] += k * delta.counts[i];
  return p;
}

bool ArithProgression::contains(const ParikhPoint& p) const {
  if (!p.same_support(init)) return false;
  // Find a candidate k from any moving coordinate, then verify all.
  uint64_t k = 0;
  bool pinned = false;
  for (size_t i = 0; i < init.counts.size(); ++i) {
    if (delta.counts[i] == 0) {
      if (p.counts[i] != init.counts[i]) return false;
      continue;
    }
    if (p.counts[i] < init.counts[i]) return false;
    uint64_t diff = p.counts[i] - init.counts[i];
    if (diff % delta.counts[i] != 0) return false;
    uint64_t ki = diff / delta.counts[i];
    if (pinned && ki != k) return false;
    k = ki;
    pinned = true;
  }
  return !pinned || k <= steps;
}

std::vector<ParikhPoint> ArithProgression::enumerate(uint64_t limit) const {
  if (count() > limit)
    throw ValidationError("progression: refusing to enumerate this many members");
  std::vector<ParikhPoint> out;
  out.reserve(count());
  for (uint64_t k = 0; k <= steps; ++k) out.push_back(at(k));
  return out;
}

std::optional<ArithProgression> ArithProgression::without_ends() const {
  if (steps < 2) return std::nullopt;
  return make(at(1), delta, steps - 2);
}

std::string ArithProgression::to_string(const IndependenceAlphabet& alpha) const {
  std::ostringstream os;
  os << '(' << init.to_string(alpha) << ',' << delta.to_string(alpha) << ','
     << steps << ')';
  return os.str();
}

std::optional<ArithProgression> amalgamate(const ArithProgression& p_in,
                                           const ArithProgression& q_in) {
  ArithProgression p = ArithProgression::make(p_in.init, p_in.delta, p_in.steps);
  ArithProgression q = ArithProgression::make(q_in.init, q_in.delta, q_in.steps);

  std::vector<Letter> shared;
  std::set_intersection(p.init.support.begin(), p.init.support.end(),
                        q.init.support.begin(), q.init.support.end(),
                        std::back_inserter(shared));
  if (shared.empty()) return std::nullopt;

  struct Eq {
    i128 i, d, ip, dp;  // i + d*x == ip + dp*y
  };
  std::vector<Eq> both_moving;
  std::optional<i128> pinned_x, pinned_y;

  auto pin = [](std::optional<i128>& slot, i128 v) -> bool {
    if (slot && *slot != v) return false;
    slot = v;
    return true;
  };

  for (Letter b : shared) {
    i128 i = *p.init.count_of(b), d = *p.delta.count_of(b);
    i128 ip = *q.init.count_of(b), dp = *q.delta.count_of(b);
    if (d == 0 && dp == 0) {
      if (i != ip) return std::nullopt;
    } else if (d == 0) {
      // ip + dp*y == i pins y.
      i128 num = i - ip;
      if (num < 0 || num % dp != 0) return std::nullopt;
      if (!pin(pinned_y, num / dp)) return std::nullopt;
    } else if (dp == 0) {
      i128 num = ip - i;
      if (num < 0 || num % d != 0) return std::nullopt;
      if (!pin(pinned_x, num / d)) return std::nullopt;
    } else {
      both_moving.push_back({i, d, ip, dp});
    }
  }

  const i128 ell = p.steps, ellp = q.steps;
  auto in_range = [&](i128 x, i128 y) {
    return x >= 0 && x <= ell && y >= 0 && y <= ellp;
  };
  auto satisfied = [&](i128 x, i128 y) {
    for (const Eq& e : both_moving) {
      if (e.i + e.d * x != e.ip + e.dp * y) return false;
    }
    return true;
  };

  auto join_at = [&](i128 x, i128 y) {
    ParikhPoint px = p.at(to_u64(x, "member index"));
    ParikhPoint qy = q.at(to_u64(y, "member index"));
    std::vector<Letter> support;
    std::vector<uint64_t> counts;
    std::merge(px.support.begin(), px.support.end(), qy.support.begin(),
               qy.support.end(), std::back_inserter(support));
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (Letter a : support) {
      auto ca = px.count_of(a);
      counts.push_back(ca ? *ca : *qy.count_of(a));
    }
    return ParikhPoint::over(support, counts);
  };

  auto family = [&](i128 x0, i128 y0, i128 dx, i128 dy,
                    i128 tmax) -> std::optional<ArithProgression> {
    if (tmax < 0) return std::nullopt;
    ParikhPoint first = join_at(x0, y0);
    if (tmax == 0) return ArithProgression::singleton(std::move(first));
    ParikhPoint second = join_at(x0 + dx, y0 + dy);
    ParikhPoint delta = second;
    for (size_t i = 0; i < delta.counts.size(); ++i)
      delta.counts[i] -= first.counts[i];
    return ArithProgression::make(std::move(first), std::move(delta),
                                  to_u64(tmax, "step count"));
  };

  if (pinned_x && pinned_y) {
    if (!in_range(*pinned_x, *pinned_y) || !satisfied(*pinned_x, *pinned_y))
      return std::nullopt;
    return family(*pinned_x, *pinned_y, 0, 0, 0);
  }
  if (pinned_x || pinned_y) {
    const bool have_x = pinned_x.has_value();
    i128 fixed = have_x ? *pinned_x : *pinned_y;
    if (have_x ? (fixed > ell) : (fixed > ellp)) return std::nullopt;
    if (!both_moving.empty()) {
      // Each remaining equation pins the free variable; all must agree.
      std::optional<i128> other;
      for (const Eq& e : both_moving) {
        i128 num = have_x ? (e.i + e.d * fixed - e.ip) : (e.ip + e.dp * fixed - e.i);
        i128 den = have_x ? e.dp : e.d;
        if (num < 0 || num % den != 0) return std::nullopt;
        if (!pin(other, num / den)) return std::nullopt;
      }
      i128 x = have_x ? fixed : *other;
      i128 y = have_x ? *other : fixed;
      if (!in_range(x, y)) return std::nullopt;
      return family(x, y, 0, 0, 0);
    }
    // Free variable sweeps its whole range.
    if (have_x) return family(fixed, 0, 0, 1, ellp);
    return family(0, fixed, 1, 0, ell);
  }

  if (both_moving.empty()) {
    // Only constant shared coordinates, and they agree. Representable as one
    // progression only when at most one side actually moves.
    if (p.steps == 0) return family(0, 0, 0, 1, ellp);
    if (q.steps == 0) return family(0, 0, 1, 0, ell);
    throw ValidationError(
        "amalgamate: solution set is a two-parameter family, not an "
        "arithmetic progression");
  }

  // Least simultaneous solution of i + d*x == ip + dp*y on the first moving
  // shared coordinate, then a one-parameter family with period lcm/d.
  const Eq a = both_moving.front();
  i128 u, v;
  i128 g = egcd(a.d, a.dp, u, v);
  if ((a.ip - a.i) % g != 0) return std::nullopt;
  // d*x - dp*y = ip - i
  i128 scale = (a.ip - a.i) / g;
  i128 x0 = u * scale;
  i128 dxp = a.dp / g;  // x advances by dp/g per t
  i128 dyp = a.d / g;   // y advances by d/g per t
  // Shift x0 into [0, dxp) before touching products of it, then walk forward
  // to the least member with y >= 0 as well.
  x0 -= floor_div(x0, dxp) * dxp;
  i128 y_from_x = (a.i + a.d * x0 - a.ip) / a.dp;
  while (y_from_x < 0) {
    x0 += dxp;
    y_from_x += dyp;
  }
  i128 y0 = y_from_x;

  std::vector<Eq> rest(both_moving.begin() + 1, both_moving.end());
  // A dependent equation keeps the family one-dimensional; an independent one
  // pins t.
  std::optional<i128> pinned_t;
  for (const Eq& e : rest) {
    i128 c1 = e.d * dxp - e.dp * dyp;
    i128 c0 = e.i + e.d * x0 - e.ip - e.dp * y0;
    if (c1 == 0) {
      if (c0 != 0) return std::nullopt;
      continue;
    }
    if (c0 % c1 != 0) return std::nullopt;
    i128 t = -c0 / c1;
    if (t < 0) return std::nullopt;
    if (pinned_t && *pinned_t != t) return std::nullopt;
    pinned_t = t;
  }

  i128 tmax_range = std::min(floor_div(ell - x0, dxp), floor_div(ellp - y0, dyp));
  if (pinned_t) {
    i128 t = *pinned_t;
    if (t > tmax_range) return std::nullopt;
    i128 x = x0 + dxp * t, y = y0 + dyp * t;
    if (!in_range(x, y) || !satisfied(x, y)) return std::nullopt;
    return family(x, y, 0, 0, 0);
  }
  return family(x0, y0, dxp, dyp, tmax_range);
}

}  // namespace raag
