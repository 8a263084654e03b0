#include "fo2kit/identities.hpp"

#include <cassert>

#include "fo2kit/error.hpp"

namespace fo2 {

namespace {

// Omega powers for every element, computed once per check.
std::vector<int> omega_powers(const Monoid& m) {
  std::vector<int> pw(static_cast<size_t>(m.size()));
  for (int x = 0; x < m.size(); ++x)
    pw[static_cast<size_t>(x)] = m.idempotent_power(x);
#ifndef NDEBUG
  // x^(uniform omega) must be the same idempotent.
  int omega = uniform_omega(m);
  for (int s : m.semigroup)
    assert(m.pow(s, omega) == pw[static_cast<size_t>(s)]);
#endif
  return pw;
}

// Distinct values of e*s*e for s in S, in order of their smallest
// preimage s.  Pairs are (value, smallest s).
std::vector<std::pair<int, int>> guarded_values(const Monoid& m, int e) {
  std::vector<std::pair<int, int>> out;
  std::vector<bool> seen(static_cast<size_t>(m.size()), false);
  for (int s : m.semigroup) {
    int u = m.mul(m.mul(e, s), e);
    if (!seen[static_cast<size_t>(u)]) {
      seen[static_cast<size_t>(u)] = true;
      out.emplace_back(u, s);
    }
  }
  return out;
}

}  // namespace

Verdict check_aperiodic(const Monoid& m) {
  auto pw = omega_powers(m);
  for (int s : m.semigroup) {
    int so = pw[static_cast<size_t>(s)];
    if (m.mul(so, s) != so)
      return {false, {{"s", s}}};
  }
  return {};
}

Verdict check_da(const Monoid& m) {
  auto pw = omega_powers(m);
  for (int s : m.semigroup)
    for (int t : m.semigroup) {
      int x = m.mul(s, t);
      int xo = pw[static_cast<size_t>(x)];
      if (m.mul(m.mul(xo, t), xo) != xo)
        return {false, {{"s", s}, {"t", t}}};
    }
  return {};
}

Verdict check_eqdad(const Monoid& m) {
  auto pw = omega_powers(m);
  for (int e : m.idempotents) {
    // esete = (ese)(ete), and since e absorbs into (esete)^w on both
    // sides, the middle t can be replaced by ete.  Deduplicating the
    // guarded values keeps the scan quadratic in |eSe| rather than |S|;
    // ordering by smallest preimage preserves the canonical witness.
    auto guarded = guarded_values(m, e);
    for (const auto& [u, s] : guarded)
      for (const auto& [v, t] : guarded) {
        int x = m.mul(u, v);
        int xo = pw[static_cast<size_t>(x)];
        if (m.mul(m.mul(xo, t), xo) != xo)
          return {false, {{"s", s}, {"t", t}, {"e", e}}};
      }
  }
  return {};
}

Verdict check_local_da(const Monoid& m) {
  auto pw = omega_powers(m);
  for (int e : m.idempotents) {
    // eSe in ascending element order.
    std::vector<bool> member(static_cast<size_t>(m.size()), false);
    for (int s : m.semigroup)
      member[static_cast<size_t>(m.mul(m.mul(e, s), e))] = true;
    std::vector<int> ese;
    for (int x = 0; x < m.size(); ++x)
      if (member[static_cast<size_t>(x)])
        ese.push_back(x);

    for (int s : ese)
      for (int t : ese) {
        int x = m.mul(s, t);
        int xo = pw[static_cast<size_t>(x)];
        if (m.mul(m.mul(xo, t), xo) != xo)
          return {false, {{"e", e}, {"s", s}, {"t", t}}};
      }
  }
  return {};
}

Pipeline build_pipeline(const Dfa& dfa, std::size_t max_monoid) {
  Dfa min = minimize(dfa);
  Morphism alpha = transition_monoid(min, max_monoid);
  std::vector<int> f = accepting_elements(alpha.m(), min);
  bool eps = min.accepting[static_cast<size_t>(min.initial)];
  return Pipeline{std::move(min), std::move(alpha), std::move(f), eps};
}

Pipeline build_pipeline(std::string_view regex, const Alphabet& alphabet,
                        std::size_t max_monoid) {
  return build_pipeline(determinize(compile_nfa(parse_regex(regex, alphabet))),
                        max_monoid);
}

ClassReport classify(const Pipeline& p) {
  const Monoid& m = p.monoid();
  ClassReport r;
  r.aperiodic = check_aperiodic(m);
  r.in_da = check_da(m);
  r.eqdad = check_eqdad(m);
  r.local_da = check_local_da(m);
  r.monoid_size = m.size();
  r.semigroup_size = static_cast<int>(m.semigroup.size());
  r.accepts_empty = p.accepts_empty;
  return r;
}

ClassReport classify(const Dfa& dfa) { return classify(build_pipeline(dfa)); }

ClassReport classify(std::string_view regex, const Alphabet& alphabet) {
  return classify(build_pipeline(regex, alphabet));
}

}  // namespace fo2
