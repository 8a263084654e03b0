#ifndef FO2KIT_IO_HPP
#define FO2KIT_IO_HPP

#include <string>

#include "fo2kit/automata.hpp"
#include "fo2kit/efgame.hpp"
#include "fo2kit/identities.hpp"
#include "fo2kit/monoid.hpp"

namespace fo2 {

/// DFA interchange format:
///   {"alphabet": ["a","b"], "states": 4, "initial": 0,
///    "accepting": [2], "transitions": [[1,3],[3,2],[1,3],[3,3]]}
/// where transitions[q][i] is the successor of q on the i-th letter.
Dfa dfa_from_json(const std::string& text);
std::string dfa_to_json(const Dfa& dfa, int indent = -1);

/// Monoid dump: element transformation vectors, multiplication table,
/// generator map, semigroup indices, idempotent list.
std::string monoid_to_json(const Morphism& alpha, int indent = -1);

/// Classification report with per-identity verdicts and witnesses.
std::string class_report_to_json(const ClassReport& report, int indent = -1);

std::string necessity_report_to_json(const NecessityReport& report,
                                     int indent = -1);

}  // namespace fo2

#endif
