#include "fo2kit/efgame.hpp"

#include <algorithm>

#include "fo2kit/error.hpp"

namespace fo2 {

AtomicType atomic_type(std::string_view w, int old_pos, int new_pos) {
  const int n = static_cast<int>(w.size());
  if (old_pos < 1 || old_pos > n || new_pos < 1 || new_pos > n)
    throw Error("atomic_type: position out of range");
  AtomicType t;
  t.x_less_y = old_pos < new_pos;
  t.y_less_x = new_pos < old_pos;
  t.succ_xy = new_pos == old_pos + 1;
  t.succ_yx = old_pos == new_pos + 1;
  t.label = w[static_cast<size_t>(new_pos - 1)];
  return t;
}

namespace {

// The five possible order/successor relations of a move.
enum MoveClass : int { kStay, kNext, kPrev, kFarAfter, kFarBefore };

inline MoveClass classify(int from, int to) {
  if (to == from)
    return kStay;
  if (to == from + 1)
    return kNext;
  if (to == from - 1)
    return kPrev;
  return to > from ? kFarAfter : kFarBefore;
}

}  // namespace

bool duplicator_wins(std::string_view w, std::string_view wp, int k) {
  if (w.empty() || wp.empty())
    throw Error("duplicator_wins: the game is defined on non-empty words only");
  if (k < 0)
    throw Error("duplicator_wins: negative round count");
  const int n = static_cast<int>(w.size());
  const int np = static_cast<int>(wp.size());
  if (w[0] != wp[0])
    return false;  // invalid start: Spoiler wins at round 0

  // win[p][p'] for label-equal pairs, refined k times.
  auto idx = [&](int p, int q) {
    return static_cast<size_t>(p - 1) * static_cast<size_t>(np) +
           static_cast<size_t>(q - 1);
  };
  std::vector<char> win(static_cast<size_t>(n) * static_cast<size_t>(np));
  for (int p = 1; p <= n; ++p)
    for (int q = 1; q <= np; ++q)
      win[idx(p, q)] =
          w[static_cast<size_t>(p - 1)] == wp[static_cast<size_t>(q - 1)];

  std::vector<char> next(win.size());
  for (int round = 1; round <= k; ++round) {
    for (int p = 1; p <= n; ++p)
      for (int q = 1; q <= np; ++q) {
        if (!win[idx(p, q)]) {
          next[idx(p, q)] = 0;
          continue;
        }
        bool ok = true;
        // Spoiler moves in w to p2; Duplicator answers in w' with q2 of
        // the same class and label, landing in a winning position.
        for (int p2 = 1; p2 <= n && ok; ++p2) {
          MoveClass mc = classify(p, p2);
          char label = w[static_cast<size_t>(p2 - 1)];
          bool reply = false;
          for (int q2 = 1; q2 <= np; ++q2)
            if (classify(q, q2) == mc &&
                wp[static_cast<size_t>(q2 - 1)] == label && win[idx(p2, q2)]) {
              reply = true;
              break;
            }
          ok = reply;
        }
        // Spoiler moves in w'.
        for (int q2 = 1; q2 <= np && ok; ++q2) {
          MoveClass mc = classify(q, q2);
          char label = wp[static_cast<size_t>(q2 - 1)];
          bool reply = false;
          for (int p2 = 1; p2 <= n; ++p2)
            if (classify(p, p2) == mc &&
                w[static_cast<size_t>(p2 - 1)] == label && win[idx(p2, q2)]) {
              reply = true;
              break;
            }
          ok = reply;
        }
        next[idx(p, q)] = ok;
      }
    std::swap(win, next);
  }
  return win[idx(1, 1)];
}

std::pair<std::string, std::string> witness_pair(const Morphism& alpha, int s,
                                                 int t, int e, int k) {
  const Monoid& m = alpha.m();
  if (k < 1)
    throw Error("witness_pair: k must be >= 1");
  auto check_in_s = [&](int x, const char* role) {
    if (x < 0 || x >= m.size() || !m.in_semigroup[static_cast<size_t>(x)])
      throw Error(std::string("witness_pair: ") + role +
                  " is not in the semigroup image");
  };
  check_in_s(s, "s");
  check_in_s(t, "t");
  check_in_s(e, "e");
  if (!m.is_idempotent(e))
    throw Error("witness_pair: e must be idempotent");

  const std::string U = preimage_word(alpha, s, true);
  const std::string V = preimage_word(alpha, t, true);
  const std::string E = preimage_word(alpha, e, true);
  const int omega = uniform_omega(m);

  std::string ek;
  for (int i = 0; i < k; ++i)
    ek += E;
  std::string block = ek + U + ek + V + ek;
  std::string w;
  for (int i = 0; i < k * omega; ++i)
    w += block;
  std::string wp = w + V + w;

  int esete = m.mul(m.mul(m.mul(m.mul(e, s), e), t), e);
  int xo = m.idempotent_power(esete);
  if (alpha.eval(w) != xo)
    throw Error("witness_pair: alpha(w_k) != (esete)^omega");
  if (alpha.eval(wp) != m.mul(m.mul(xo, t), xo))
    throw Error("witness_pair: alpha(w'_k) != (esete)^omega t (esete)^omega");
  return {std::move(w), std::move(wp)};
}

NecessityReport necessity_check(const Morphism& alpha, int s, int t, int e,
                                int k_max) {
  const Monoid& m = alpha.m();
  int esete = m.mul(m.mul(m.mul(m.mul(e, s), e), t), e);
  int xo = m.idempotent_power(esete);
  if (m.mul(m.mul(xo, t), xo) == xo)
    throw Error("necessity_check: the triple does not falsify the identity");

  NecessityReport report;
  report.s = s;
  report.t = t;
  report.e = e;
  for (int k = 1; k <= k_max; ++k) {
    auto [w, wp] = witness_pair(alpha, s, t, e, k);
    NecessityEntry entry;
    entry.k = k;
    entry.len_w = w.size();
    entry.len_w_prime = wp.size();
    entry.alpha_w = alpha.eval(w);
    entry.alpha_w_prime = alpha.eval(wp);
    entry.duplicator_wins = fo2::duplicator_wins(w, wp, k);
    report.entries.push_back(entry);
  }
  return report;
}

}  // namespace fo2
