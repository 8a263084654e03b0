#include "fo2kit/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "fo2kit/error.hpp"
#include "fo2kit/identities.hpp"

namespace fo2 {

namespace {

void ensure(bool cond, const std::string& msg) {
  if (!cond)
    throw Error(msg);
}

}  // namespace

Factorization factorize(const Morphism& alpha, std::string_view w) {
  const Monoid& m = alpha.m();
  const int ssize = static_cast<int>(m.semigroup.size());
  const int ell = static_cast<int>(w.size());
  if (ell <= ssize)
    throw Error("factorize: the word must be longer than |S|");

  std::vector<int> images(static_cast<size_t>(ell));
  for (int p = 0; p < ell; ++p)
    images[static_cast<size_t>(p)] =
        alpha.image(alpha.alphabet.index_checked(w[static_cast<size_t>(p)]));

  Factorization out;
  out.i_k.reserve(static_cast<size_t>(ell - ssize));
  for (int k = 1; k <= ell - ssize; ++k) {
    int val = m.identity;
    int found_i = -1, found_e = -1;
    for (int i = k; i <= k + ssize - 1; ++i) {
      val = m.mul(val, images[static_cast<size_t>(i - 1)]);
      for (int e : m.idempotents)
        if (m.mul(val, e) == val) {
          found_i = i;
          found_e = e;
          break;
        }
      if (found_i >= 0)
        break;
    }
    ensure(found_i >= 0, "factorize: no absorbed idempotent within |S| steps");
    out.i_k.push_back(found_i);
    out.e_k.push_back(found_e);
  }

  // i_k is not monotone, so the same cut may reappear; the first k that
  // produced a cut provides its attached idempotent.
  for (size_t k = 0; k < out.i_k.size(); ++k) {
    int cut = out.i_k[k];
    if (std::find(out.cuts.begin(), out.cuts.end(), cut) == out.cuts.end()) {
      out.cuts.push_back(cut);
      out.cut_idem.push_back(out.e_k[k]);
    }
  }
  {
    // Sort cuts ascending, keeping the smallest-k idempotent attachment.
    std::vector<std::pair<int, int>> paired;
    for (size_t i = 0; i < out.cuts.size(); ++i)
      paired.emplace_back(out.cuts[i], out.cut_idem[i]);
    std::stable_sort(paired.begin(), paired.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < paired.size(); ++i) {
      out.cuts[i] = paired[i].first;
      out.cut_idem[i] = paired[i].second;
    }
  }

  int begin = 1;
  for (int cut : out.cuts) {
    out.factors.emplace_back(begin, cut);
    begin = cut + 1;
  }
  out.factors.emplace_back(begin, ell);
  for (auto [b, e] : out.factors)
    ensure(b <= e && e - b + 1 <= ssize,
           "factorize: factor length out of [1, |S|]");
  return out;
}

ExtWord eta(const Morphism& alpha, std::string_view w) {
  const Monoid& m = alpha.m();
  const int ssize = static_cast<int>(m.semigroup.size());
  ExtWord out;
  if (static_cast<int>(w.size()) <= ssize) {
    out.push_back(ExtLetter{Guard::box(), alpha.eval(w), Guard::box()});
  } else {
    Factorization f = factorize(alpha, w);
    const int h = static_cast<int>(f.cuts.size());
    for (int k = 0; k <= h; ++k) {
      Guard left = k == 0 ? Guard::box() : Guard::idem(f.cut_idem[static_cast<size_t>(k - 1)]);
      Guard right = k == h ? Guard::box() : Guard::idem(f.cut_idem[static_cast<size_t>(k)]);
      auto [b, e] = f.factors[static_cast<size_t>(k)];
      int val = alpha.eval(w.substr(static_cast<size_t>(b - 1), static_cast<size_t>(e - b + 1)));
      out.push_back(ExtLetter{left, val, right});
    }
  }
  ensure(is_well_formed(m, out), "eta: result is not well-formed");
  ensure(beta_word(m, out) == alpha.eval(w), "eta: beta(eta(w)) != alpha(w)");
  return out;
}

std::vector<std::optional<ExtLetter>> eta_labels(const Morphism& alpha,
                                                 std::string_view w) {
  std::vector<std::optional<ExtLetter>> out(w.size());
  if (w.empty())
    return out;
  ExtWord u = eta(alpha, w);
  const Monoid& m = alpha.m();
  const int ssize = static_cast<int>(m.semigroup.size());
  if (static_cast<int>(w.size()) <= ssize) {
    out[0] = u[0];
    return out;
  }
  Factorization f = factorize(alpha, w);
  for (size_t k = 0; k < f.factors.size(); ++k)
    out[static_cast<size_t>(f.factors[k].first - 1)] = u[k];
  return out;
}

int window_radius(const Monoid& m) {
  return 2 * static_cast<int>(m.semigroup.size()) + 1;
}

Window window_at(std::string_view w, int pos, int radius) {
  const int n = static_cast<int>(w.size());
  if (pos < 1 || pos > n)
    throw Error("window_at: position out of range");
  Window win;
  win.radius = radius;
  win.dist_left = std::min(pos - 1, radius);
  win.dist_right = std::min(n - pos, radius);
  win.letters = std::string(
      w.substr(static_cast<size_t>(pos - 1 - win.dist_left),
               static_cast<size_t>(win.dist_left + 1 + win.dist_right)));
  return win;
}

std::optional<ExtLetter> window_profile(const Morphism& alpha, const Window& win) {
  const Monoid& m = alpha.m();
  const int ssize = static_cast<int>(m.semigroup.size());
  const int radius = win.radius;
  const int dl = win.dist_left;
  const int dr = win.dist_right;
  ensure(radius >= window_radius(m), "window_profile: radius too small");
  ensure(dl <= radius && dr <= radius &&
             static_cast<int>(win.letters.size()) == dl + 1 + dr,
         "window_profile: malformed window");

  const bool known_start = dl < radius;
  const bool known_end = dr < radius;

  // Letter image at offset d from the center (d in [-dl, dr]).
  auto image_at = [&](int d) {
    return alpha.image(
        alpha.alphabet.index_checked(win.letters[static_cast<size_t>(dl + d)]));
  };
  // Word value of offsets [from, to].
  auto value_of = [&](int from, int to) {
    int val = m.identity;
    for (int d = from; d <= to; ++d)
      val = m.mul(val, image_at(d));
    return val;
  };

  if (known_start && known_end && dl + 1 + dr <= ssize) {
    // Short regime: the whole word is visible and has one factor.
    if (dl != 0)
      return std::nullopt;
    return ExtLetter{Guard::box(), value_of(0, dr), Guard::box()};
  }

  // Long regime.  k below are offsets of candidate start positions.
  auto valid_k = [&](int dk) {
    if (known_start && dk < -dl)
      return false;
    if (known_end && dk > dr - ssize)
      return false;
    return true;
  };
  // (i_k, e_k) for a valid start offset dk.
  auto cut_of = [&](int dk) -> std::pair<int, int> {
    int val = m.identity;
    for (int di = dk; di <= dk + ssize - 1; ++di) {
      val = m.mul(val, image_at(di));
      for (int e : m.idempotents)
        if (m.mul(val, e) == val)
          return {di, e};
    }
    throw Error("window_profile: no absorbed idempotent within |S| steps");
  };

  Guard f_prev = Guard::box();
  if (dl != 0) {
    // The center is distinguished iff the previous position is a cut.
    int attach = -1;
    for (int dk = std::max(-ssize, -dl); dk <= -1; ++dk) {
      if (!valid_k(dk))
        continue;
      auto [di, e] = cut_of(dk);
      if (di == -1) {
        attach = e;
        break;
      }
    }
    if (attach < 0)
      return std::nullopt;
    f_prev = Guard::idem(attach);
  }

  // First cut at or after the center.
  int best = std::numeric_limits<int>::max();
  for (int dk = std::max(-ssize + 1, -dl); dk <= ssize - 1; ++dk) {
    if (!valid_k(dk))
      continue;
    auto [di, e] = cut_of(dk);
    if (di >= 0)
      best = std::min(best, di);
  }

  Guard f_next = Guard::box();
  int factor_end;
  if (best != std::numeric_limits<int>::max()) {
    factor_end = best;
    int attach = -1;
    for (int dk = std::max(best - ssize + 1, -dl); dk <= best; ++dk) {
      if (!valid_k(dk))
        continue;
      auto [di, e] = cut_of(dk);
      if (di == best) {
        attach = e;
        break;
      }
    }
    ensure(attach >= 0, "window_profile: cut without an attached idempotent");
    f_next = Guard::idem(attach);
  } else {
    ensure(known_end, "window_profile: unbounded factor");
    factor_end = dr;
  }
  return ExtLetter{f_prev, value_of(0, factor_end), f_next};
}

LetterSet LetterSet::none(int universe) {
  LetterSet s;
  s.bits.assign(static_cast<size_t>((universe + 63) / 64), 0);
  return s;
}

LetterSet LetterSet::full(int universe) {
  LetterSet s = none(universe);
  for (int i = 0; i < universe; ++i)
    s.insert(i);
  return s;
}

int LetterSet::count() const {
  int c = 0;
  for (std::uint64_t word : bits)
    c += __builtin_popcountll(word);
  return c;
}

std::vector<int> guard_values(const ExtAlphabet& B, const Monoid& m,
                              const LetterSet& C, GuardSet kind, Guard g1,
                              Guard g2) {
  // States of the reachability fixpoint: (right guard of the word so
  // far, accumulated beta value).
  const int guards = B.guard_count();
  const int msize = m.size();
  std::vector<bool> visited(static_cast<size_t>(guards * msize), false);
  std::deque<std::pair<int, int>> work;  // (guard rank, value)

  auto push = [&](Guard g, int value) {
    int idx = B.guard_rank(g) * msize + value;
    if (!visited[static_cast<size_t>(idx)]) {
      visited[static_cast<size_t>(idx)] = true;
      work.emplace_back(B.guard_rank(g), value);
    }
  };

  // Seed letters: Prefix allows any left guard; Suffix/Inner fix it.
  for (int i = 0; i < B.size(); ++i) {
    if (!C.contains(i))
      continue;
    const ExtLetter& c = B.letter(i);
    if (kind == GuardSet::Suffix && !(c.left == g1))
      continue;
    if (kind == GuardSet::Inner && !(c.left == g1))
      continue;
    push(c.right, beta(m, c));
  }
  while (!work.empty()) {
    auto [grank, value] = work.front();
    work.pop_front();
    Guard g = B.guard_at(grank);
    if (g.is_box())
      continue;  // a box right guard cannot chain
    for (int i = 0; i < B.size(); ++i) {
      if (!C.contains(i))
        continue;
      const ExtLetter& c = B.letter(i);
      if (c.left == g)
        push(c.right, m.mul(value, beta(m, c)));
    }
  }

  std::vector<bool> in_result(static_cast<size_t>(msize), false);
  switch (kind) {
    case GuardSet::Prefix:
      if (g1.is_box())
        break;  // P^C[box] = {eps}
      for (int v = 0; v < msize; ++v)
        if (visited[static_cast<size_t>(B.guard_rank(g1) * msize + v)])
          in_result[static_cast<size_t>(v)] = true;
      break;
    case GuardSet::Suffix:
      if (g1.is_box())
        break;  // S^C[box] = {eps}
      for (int g = 0; g < guards; ++g)
        for (int v = 0; v < msize; ++v)
          if (visited[static_cast<size_t>(g * msize + v)])
            in_result[static_cast<size_t>(v)] = true;
      break;
    case GuardSet::Inner:
      for (int v = 0; v < msize; ++v)
        if (visited[static_cast<size_t>(B.guard_rank(g2) * msize + v)])
          in_result[static_cast<size_t>(v)] = true;
      break;
  }

  std::vector<int> out;
  for (int v = 0; v < msize; ++v)
    if (in_result[static_cast<size_t>(v)])
      out.push_back(v);
  if (kind != GuardSet::Inner) {
    // The empty word always contributes the identity.
    if (!std::binary_search(out.begin(), out.end(), m.identity))
      out.insert(std::lower_bound(out.begin(), out.end(), m.identity),
                 m.identity);
  } else if (!g1.is_box() && g1 == g2) {
    if (!std::binary_search(out.begin(), out.end(), m.identity))
      out.insert(std::lower_bound(out.begin(), out.end(), m.identity),
                 m.identity);
  }
  return out;
}

std::size_t SynthKeyHash::operator()(const SynthKey& k) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (std::uint64_t word : k.letters.bits)
    mix(word);
  mix(static_cast<std::uint64_t>(k.e1.element + 1));
  mix(static_cast<std::uint64_t>(k.e2.element + 1));
  mix(static_cast<std::uint64_t>(k.t1));
  mix(static_cast<std::uint64_t>(k.t2));
  mix(static_cast<std::uint64_t>(k.s));
  return static_cast<std::size_t>(h);
}

std::size_t Synthesizer::ValueKeyHash::operator()(const ValueKey& k) const {
  std::uint64_t h = 0x85ebca6b12345ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (std::uint64_t word : k.letters.bits)
    mix(word);
  mix(static_cast<std::uint64_t>(k.kind));
  mix(static_cast<std::uint64_t>(k.g1.element + 1));
  mix(static_cast<std::uint64_t>(k.g2.element + 1));
  return static_cast<std::size_t>(h);
}

Synthesizer::Synthesizer(Morphism alpha, SynthConfig cfg)
    : alpha_(std::move(alpha)), cfg_(cfg),
      ext_(alpha_.m(), cfg.max_ext_alphabet) {
  arena_.set_node_budget(cfg_.node_budget);
  const Monoid& m = monoid();
  const size_t n = static_cast<size_t>(m.size());
  rm_reach_.assign(n, std::vector<bool>(n, false));
  lm_reach_.assign(n, std::vector<bool>(n, false));
  for (int x = 0; x < m.size(); ++x)
    for (int y = 0; y < m.size(); ++y) {
      rm_reach_[static_cast<size_t>(x)][static_cast<size_t>(m.mul(x, y))] = true;
      lm_reach_[static_cast<size_t>(y)][static_cast<size_t>(m.mul(x, y))] = true;
    }
}

int Synthesizer::right_ideal_size(int x) const {
  int c = 0;
  for (bool b : rm_reach_[static_cast<size_t>(x)])
    c += b;
  return c;
}

int Synthesizer::left_ideal_size(int x) const {
  int c = 0;
  for (bool b : lm_reach_[static_cast<size_t>(x)])
    c += b;
  return c;
}

SynthKey Synthesizer::full_key(int s) const {
  return SynthKey{LetterSet::full(ext_.size()), Guard::box(), Guard::box(),
                  monoid().identity, monoid().identity, s};
}

const std::vector<int>& Synthesizer::values(const LetterSet& C, GuardSet kind,
                                            Guard g1, Guard g2) {
  ValueKey key{C, kind, g1, g2};
  auto it = value_cache_.find(key);
  if (it == value_cache_.end())
    it = value_cache_.emplace(std::move(key),
                              guard_values(ext_, monoid(), C, kind, g1, g2))
             .first;
  return it->second;
}

void Synthesizer::check_key(const SynthKey& key) {
  const auto& pvals = values(key.letters, GuardSet::Prefix, key.e1);
  ensure(std::binary_search(pvals.begin(), pvals.end(), key.t1),
         "synth: t1 is not an admissible prefix value for e1");
  const auto& svals = values(key.letters, GuardSet::Suffix, key.e2);
  ensure(std::binary_search(svals.begin(), svals.end(), key.t2),
         "synth: t2 is not an admissible suffix value for e2");
}

bool Synthesizer::is_left_saturated(const SynthKey& key) {
  const Monoid& m = monoid();
  for (int g = 0; g < ext_.guard_count(); ++g) {
    Guard f = ext_.guard_at(g);
    for (int v : values(key.letters, GuardSet::Inner, key.e1, f))
      if (!in_right_ideal(m.mul(key.t1, v), key.t1))
        return false;
  }
  return true;
}

bool Synthesizer::is_right_saturated(const SynthKey& key) {
  const Monoid& m = monoid();
  for (int g = 0; g < ext_.guard_count(); ++g) {
    Guard f = ext_.guard_at(g);
    for (int v : values(key.letters, GuardSet::Inner, f, key.e2))
      if (!in_left_ideal(m.mul(v, key.t2), key.t2))
        return false;
  }
  return true;
}

std::vector<int> Synthesizer::blocking_r_set(const SynthKey& key, int letter,
                                             bool left) {
  // Values of { v | vc pseudo well-formed with the key's outer guard }
  // (mirrored for the right side).  A box guard on the chaining side of
  // c admits only v = eps, since box guards cannot chain.
  const ExtLetter& c = ext_.letter(letter);
  Guard chain = left ? c.left : c.right;
  Guard outer = left ? key.e1 : key.e2;
  std::vector<int> r;
  if (!chain.is_box())
    r = left ? values(key.letters, GuardSet::Inner, outer, chain)
             : values(key.letters, GuardSet::Inner, chain, outer);
  if (outer == chain &&
      !std::binary_search(r.begin(), r.end(), monoid().identity))
    r.insert(std::lower_bound(r.begin(), r.end(), monoid().identity),
             monoid().identity);
  return r;
}

Synthesizer::BlockingLetter Synthesizer::find_blocking_letter(const SynthKey& key) {
  const Monoid& m = monoid();
  const int msize = m.size();
  std::vector<bool> visited(static_cast<size_t>(ext_.guard_count() * msize), false);
  std::deque<std::pair<int, int>> work;  // (right-guard rank, t1 * beta(u))

  auto consider = [&](int letter, int value) -> std::optional<BlockingLetter> {
    const ExtLetter& c = ext_.letter(letter);
    int next = m.mul(value, beta(m, c));
    if (!in_right_ideal(next, key.t1)) {
      // Shortest blocking word found; verify the letter blocks for every
      // admissible prefix value, which the induction step relies on.
      for (int r : blocking_r_set(key, letter, true))
        ensure(!in_right_ideal(m.mul(m.mul(key.t1, r), beta(m, c)), key.t1),
               "synth: blocking letter fails the universal property");
      return BlockingLetter{letter, c.right};
    }
    int idx = ext_.guard_rank(c.right) * msize + next;
    if (!visited[static_cast<size_t>(idx)]) {
      visited[static_cast<size_t>(idx)] = true;
      work.emplace_back(ext_.guard_rank(c.right), next);
    }
    return std::nullopt;
  };

  for (int i = 0; i < ext_.size(); ++i) {
    if (!key.letters.contains(i) || !(ext_.letter(i).left == key.e1))
      continue;
    if (auto hit = consider(i, key.t1))
      return *hit;
  }
  while (!work.empty()) {
    auto [grank, value] = work.front();
    work.pop_front();
    Guard g = ext_.guard_at(grank);
    if (g.is_box())
      continue;
    for (int i = 0; i < ext_.size(); ++i) {
      if (!key.letters.contains(i) || !(ext_.letter(i).left == g))
        continue;
      if (auto hit = consider(i, value))
        return *hit;
    }
  }
  throw Error("find_blocking_letter: t1 is left saturated");
}

Synthesizer::BlockingLetter Synthesizer::find_blocking_letter_right(
    const SynthKey& key) {
  const Monoid& m = monoid();
  const int msize = m.size();
  std::vector<bool> visited(static_cast<size_t>(ext_.guard_count() * msize), false);
  std::deque<std::pair<int, int>> work;  // (left-guard rank, beta(u) * t2)

  auto consider = [&](int letter, int value) -> std::optional<BlockingLetter> {
    const ExtLetter& c = ext_.letter(letter);
    int next = m.mul(beta(m, c), value);
    if (!in_left_ideal(next, key.t2)) {
      for (int r : blocking_r_set(key, letter, false))
        ensure(!in_left_ideal(m.mul(beta(m, c), m.mul(r, key.t2)), key.t2),
               "synth: blocking letter fails the universal property");
      return BlockingLetter{letter, c.left};
    }
    int idx = ext_.guard_rank(c.left) * msize + next;
    if (!visited[static_cast<size_t>(idx)]) {
      visited[static_cast<size_t>(idx)] = true;
      work.emplace_back(ext_.guard_rank(c.left), next);
    }
    return std::nullopt;
  };

  for (int i = 0; i < ext_.size(); ++i) {
    if (!key.letters.contains(i) || !(ext_.letter(i).right == key.e2))
      continue;
    if (auto hit = consider(i, key.t2))
      return *hit;
  }
  while (!work.empty()) {
    auto [grank, value] = work.front();
    work.pop_front();
    Guard g = ext_.guard_at(grank);
    if (g.is_box())
      continue;
    for (int i = 0; i < ext_.size(); ++i) {
      if (!key.letters.contains(i) || !(ext_.letter(i).right == g))
        continue;
      if (auto hit = consider(i, value))
        return *hit;
    }
  }
  throw Error("find_blocking_letter_right: t2 is right saturated");
}

FormulaId Synthesizer::synth_main3(const SynthKey& key) {
  auto it = memo_.find(key);
  if (it != memo_.end())
    return it->second;
  if (++depth_ > 200000) {
    --depth_;
    throw Error("synth: recursion depth limit exceeded");
  }
  check_key(key);

  const Monoid& m = monoid();
  FormulaId result;
  bool left_sat = is_left_saturated(key);
  bool right_sat = left_sat ? is_right_saturated(key) : false;

  if (left_sat && right_sat) {
    // Base case: t1 * beta(w) * t2 is constant over T^C[e1,e2].
    const auto& vals = values(key.letters, GuardSet::Inner, key.e1, key.e2);
    if (vals.empty()) {
      result = arena_.fals();
    } else {
      int r = m.mul(m.mul(key.t1, vals[0]), key.t2);
      for (int v : vals)
        ensure(m.mul(m.mul(key.t1, v), key.t2) == r,
               "synth: base case is not constant (identity violated?)");
      ++base_cases_;
      result = r == key.s ? arena_.tru() : arena_.fals();
    }
  } else if (!left_sat) {
    BlockingLetter bl = find_blocking_letter(key);
    const ExtLetter& c = ext_.letter(bl.letter);
    const int beta_c = beta(m, c);
    LetterSet D = key.letters;
    D.erase(bl.letter);

    std::vector<FormulaId> parts;
    for (int r = 0; r < m.size(); ++r)
      if (m.mul(m.mul(key.t1, r), key.t2) == key.s)
        parts.push_back(
            synth_main3({D, key.e1, key.e2, m.identity, m.identity, r}));

    for (int r : blocking_r_set(key, bl.letter, true)) {
      int t1_new = m.mul(m.mul(key.t1, r), beta_c);
      // A box guard on either side of c cannot chain inside a pseudo
      // well-formed word, so the corresponding factor is forced empty
      // and its sub-language degenerates to a constant sentence.
      FormulaId u, v;
      if (c.left.is_box()) {
        u = arena_.tru();  // the prefix before c must be empty
      } else {
        u = synth_main3({D, key.e1, c.left, m.identity, m.identity, r});
      }
      if (c.right.is_box()) {
        bool accept = key.e2.is_box() && m.mul(t1_new, key.t2) == key.s;
        v = accept ? arena_.tru() : arena_.fals();
      } else {
        ensure(right_ideal_size(t1_new) < right_ideal_size(key.t1),
               "synth: left induction measure did not decrease");
        v = synth_main3({key.letters, bl.guard, key.e2, t1_new, key.t2, key.s});
      }
      parts.push_back(
          marked_concat(arena_, u, bl.letter, v, ConcatOrder::Left));
    }
    result = arena_.simplify(arena_.disj(std::move(parts)));
  } else {
    BlockingLetter bl = find_blocking_letter_right(key);
    const ExtLetter& c = ext_.letter(bl.letter);
    const int beta_c = beta(m, c);
    LetterSet D = key.letters;
    D.erase(bl.letter);

    std::vector<FormulaId> parts;
    for (int r = 0; r < m.size(); ++r)
      if (m.mul(m.mul(key.t1, r), key.t2) == key.s)
        parts.push_back(
            synth_main3({D, key.e1, key.e2, m.identity, m.identity, r}));

    for (int r : blocking_r_set(key, bl.letter, false)) {
      int t2_new = m.mul(beta_c, m.mul(r, key.t2));
      FormulaId u, v;
      if (c.right.is_box()) {
        u = arena_.tru();  // the suffix after c must be empty
      } else {
        u = synth_main3({D, c.right, key.e2, m.identity, m.identity, r});
      }
      if (c.left.is_box()) {
        bool accept = key.e1.is_box() && m.mul(key.t1, t2_new) == key.s;
        v = accept ? arena_.tru() : arena_.fals();
      } else {
        ensure(left_ideal_size(t2_new) < left_ideal_size(key.t2),
               "synth: right induction measure did not decrease");
        v = synth_main3({key.letters, key.e1, bl.guard, key.t1, t2_new, key.s});
      }
      parts.push_back(
          marked_concat(arena_, u, bl.letter, v, ConcatOrder::Right));
    }
    result = arena_.simplify(arena_.disj(std::move(parts)));
  }

  --depth_;
  memo_.emplace(key, result);
  return result;
}

void Synthesizer::ensure_window_catalog() {
  if (catalog_built_)
    return;
  const Monoid& m = monoid();
  const int radius = window_radius(m);
  const int nletters = alpha_.alphabet.size();

  // Conservative size estimate before enumerating: each profiled window
  // contributes at least one fresh formula node later on.
  double estimate = 0;
  for (int dl = 0; dl <= radius; ++dl)
    for (int dr = 0; dr <= radius; ++dr) {
      double count = 1;
      for (int i = 0; i < dl + 1 + dr; ++i) {
        count *= nletters;
        if (count > 1e18)
          break;
      }
      estimate += count;
      if (estimate > 1e18)
        break;
    }
  std::size_t budget = arena_.node_budget();
  if (budget != 0 && (estimate > static_cast<double>(budget) ||
                      2 * estimate > static_cast<double>(budget - std::min(budget, arena_.size())))) {
    throw BudgetError(
        "window catalog would need about " + std::to_string(estimate) +
        " window contents; the formula node budget of " + std::to_string(budget) +
        " cannot accommodate the label formulas");
  }

  bucket_.assign(static_cast<size_t>(ext_.size()), {});
  for (int dl = 0; dl <= radius; ++dl) {
    for (int dr = 0; dr <= radius; ++dr) {
      const int len = dl + 1 + dr;
      std::string letters(static_cast<size_t>(len), alpha_.alphabet.letter(0));
      std::vector<int> odo(static_cast<size_t>(len), 0);
      for (;;) {
        Window win{dl, dr, radius, letters};
        if (auto b = window_profile(alpha_, win)) {
          bucket_[static_cast<size_t>(ext_.index_of(*b))].push_back(
              static_cast<int>(contents_.size()));
          contents_.push_back(WindowContent{dl, dr, letters});
        }
        int pos = len - 1;
        while (pos >= 0 && odo[static_cast<size_t>(pos)] == nletters - 1) {
          odo[static_cast<size_t>(pos)] = 0;
          letters[static_cast<size_t>(pos)] = alpha_.alphabet.letter(0);
          --pos;
        }
        if (pos < 0)
          break;
        ++odo[static_cast<size_t>(pos)];
        letters[static_cast<size_t>(pos)] =
            alpha_.alphabet.letter(odo[static_cast<size_t>(pos)]);
      }
    }
  }
  catalog_built_ = true;
}

FormulaId Synthesizer::pin_formula(const WindowContent& wc, Var v) {
  const Alphabet& A = alpha_.alphabet;
  const int radius = window_radius(monoid());
  auto letter_at = [&](int d) {
    return A.index_checked(wc.letters[static_cast<size_t>(wc.dl + d)]);
  };
  // Walking right from the center, variables alternate v, other(v), ...
  auto var_at = [&](int j) { return j % 2 == 0 ? v : other(v); };

  FormulaId right_chain;
  {
    FormulaId acc = wc.dr < radius
                        ? arena_.negation(arena_.exists(
                              other(var_at(wc.dr)),
                              arena_.successor(var_at(wc.dr), other(var_at(wc.dr)))))
                        : arena_.tru();
    for (int j = wc.dr; j >= 1; --j) {
      FormulaId step = arena_.conj({arena_.successor(var_at(j - 1), var_at(j)),
                                    arena_.letter(letter_at(j), var_at(j)), acc});
      acc = arena_.exists(var_at(j), step);
    }
    right_chain = acc;
  }
  FormulaId left_chain;
  {
    FormulaId acc = wc.dl < radius
                        ? arena_.negation(arena_.exists(
                              other(var_at(wc.dl)),
                              arena_.successor(other(var_at(wc.dl)), var_at(wc.dl))))
                        : arena_.tru();
    for (int j = wc.dl; j >= 1; --j) {
      FormulaId step = arena_.conj({arena_.successor(var_at(j), var_at(j - 1)),
                                    arena_.letter(letter_at(-j), var_at(j)), acc});
      acc = arena_.exists(var_at(j), step);
    }
    left_chain = acc;
  }
  return arena_.simplify(
      arena_.conj({arena_.letter(letter_at(0), v), left_chain, right_chain}));
}

FormulaId Synthesizer::alpha_b_formula(int b_index, Var v) {
  ensure_window_catalog();
  std::uint64_t cache_key =
      (static_cast<std::uint64_t>(b_index) << 1) | static_cast<std::uint64_t>(v);
  auto it = alpha_b_cache_.find(cache_key);
  if (it != alpha_b_cache_.end())
    return it->second;

  std::vector<FormulaId> parts;
  for (int ci : bucket_[static_cast<size_t>(b_index)])
    parts.push_back(pin_formula(contents_[static_cast<size_t>(ci)], v));
  FormulaId f = arena_.simplify(arena_.disj(std::move(parts)));
  alpha_b_cache_.emplace(cache_key, f);
  return f;
}

FormulaId Synthesizer::distinguished_formula(Var v) {
  ensure_window_catalog();
  auto slot = static_cast<size_t>(v);
  if (distinguished_built_[slot])
    return distinguished_[slot];
  std::vector<FormulaId> parts;
  for (int b = 0; b < ext_.size(); ++b)
    if (!bucket_[static_cast<size_t>(b)].empty())
      parts.push_back(alpha_b_formula(b, v));
  distinguished_[slot] = arena_.simplify(arena_.disj(std::move(parts)));
  distinguished_built_[slot] = true;
  return distinguished_[slot];
}

FormulaId Synthesizer::translate(FormulaId f) {
  auto it = translate_memo_.find(f);
  if (it != translate_memo_.end())
    return it->second;
  FormulaId result;
  switch (arena_.kind(f)) {
    case FKind::Letter:
      result = alpha_b_formula(arena_.symbol(f), arena_.var1(f));
      break;
    case FKind::Exists: {
      Var v = arena_.var1(f);
      FormulaId body = translate(arena_.children(f)[0]);
      result = arena_.exists(v, arena_.conj({distinguished_formula(v), body}));
      break;
    }
    case FKind::Forall: {
      Var v = arena_.var1(f);
      FormulaId body = translate(arena_.children(f)[0]);
      result = arena_.forall(
          v, arena_.disj({arena_.negation(distinguished_formula(v)), body}));
      break;
    }
    case FKind::Not:
      result = arena_.negation(translate(arena_.children(f)[0]));
      break;
    case FKind::And:
    case FKind::Or: {
      const auto span = arena_.children(f);
      const std::vector<FormulaId> kids(span.begin(), span.end());
      std::vector<FormulaId> cs;
      for (FormulaId c : kids)
        cs.push_back(translate(c));
      result = arena_.kind(f) == FKind::And ? arena_.conj(std::move(cs))
                                            : arena_.disj(std::move(cs));
      break;
    }
    case FKind::Succ:
      throw Error("translate: successor atom in a formula over the extended alphabet");
    default:
      result = f;
      break;
  }
  translate_memo_.emplace(f, result);
  return result;
}

FormulaId Synthesizer::synth_language(const std::vector<int>& accepting) {
  Verdict v = check_eqdad(monoid());
  if (!v.holds) {
    std::string w;
    for (const auto& [role, elem] : v.witness)
      w += " " + role + "=" + std::to_string(elem);
    throw Error("synth_language: the semigroup does not satisfy the "
                "(esete)^w = (esete)^w t (esete)^w identity; witness:" + w);
  }

  std::vector<int> sorted = accepting;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<FormulaId> parts;
  for (int s : sorted) {
    FormulaId k = synth_main3(full_key(s));
    ensure(!arena_.uses_succ(k), "synth: extended-alphabet formula uses succ");
    parts.push_back(translate(k));
  }
  return arena_.simplify(arena_.disj(std::move(parts)));
}

}  // namespace fo2
