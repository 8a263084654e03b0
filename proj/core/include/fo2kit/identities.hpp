#ifndef FO2KIT_IDENTITIES_HPP
#define FO2KIT_IDENTITIES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fo2kit/monoid.hpp"

namespace fo2 {

/// Outcome of an identity check.  When the identity fails, witness holds
/// the first falsifying tuple in enumeration order, as role/element
/// pairs (e.g. {"s",1},{"t",2},{"e",4}).
struct Verdict {
  bool holds = true;
  std::vector<std::pair<std::string, int>> witness;
};

/// s^w = s^{w+1} for all s in S (w the uniform omega).
/// Languages definable in FO(<) are exactly those whose syntactic
/// semigroup passes this check.
Verdict check_aperiodic(const Monoid& m);

/// (st)^w t (st)^w = (st)^w for all s, t in S.  Characterizes FO2(<).
Verdict check_da(const Monoid& m);

/// (esete)^w = (esete)^w t (esete)^w for all s, t in S and idempotent e.
/// Characterizes FO2(<,succ).  Witnesses are enumerated with e outermost
/// (in idempotent order), then s, then t in element order.
Verdict check_eqdad(const Monoid& m);

/// For every idempotent e, the subsemigroup eSe satisfies the DA
/// identity (s', t' quantified over eSe).  Agrees with check_eqdad on
/// every monoid; both are implemented so the equivalence is testable.
Verdict check_local_da(const Monoid& m);

struct ClassReport {
  Verdict aperiodic;
  Verdict in_da;
  Verdict eqdad;
  Verdict local_da;
  int monoid_size = 0;
  int semigroup_size = 0;
  bool accepts_empty = false;
};

/// Everything the analysis pipeline produces for one language: the
/// minimal DFA, its transition monoid, and the accepting element set.
struct Pipeline {
  Dfa dfa;                      // minimal, total
  Morphism morphism;
  std::vector<int> accepting;   // F: alpha(w) in F  <=>  w in L
  bool accepts_empty = false;

  const Monoid& monoid() const { return morphism.m(); }
};

Pipeline build_pipeline(const Dfa& dfa, std::size_t max_monoid = 4096);
Pipeline build_pipeline(std::string_view regex, const Alphabet& alphabet,
                        std::size_t max_monoid = 4096);

/// Full run: minimize, compute the syntactic monoid, run all four
/// checks.  FO(<)-definable iff aperiodic holds, FO2(<)-definable iff
/// in_da holds, FO2(<,succ)-definable iff eqdad holds.
ClassReport classify(const Pipeline& p);
ClassReport classify(const Dfa& dfa);
ClassReport classify(std::string_view regex, const Alphabet& alphabet);

}  // namespace fo2

#endif
