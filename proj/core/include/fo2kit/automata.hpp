#ifndef FO2KIT_AUTOMATA_HPP
#define FO2KIT_AUTOMATA_HPP

#include <string_view>
#include <vector>

#include "fo2kit/alphabet.hpp"
#include "fo2kit/regex.hpp"

namespace fo2 {

/// Nondeterministic finite automaton with epsilon moves (symbol -1).
struct Nfa {
  Alphabet alphabet;
  int states = 0;
  std::vector<int> initial;
  std::vector<int> accepting;
  struct Transition {
    int from;
    int symbol;  // index into alphabet, or kEpsilon
    int to;
  };
  static constexpr int kEpsilon = -1;
  std::vector<Transition> transitions;
};

/// Deterministic finite automaton with a total transition function.
/// next[q][a] is the successor of state q on the a-th alphabet letter.
struct Dfa {
  Alphabet alphabet;
  int states = 0;
  int initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<int>> next;

  int step(int state, int letter) const { return next[state][letter]; }
  /// Throws Error if the shape invariants do not hold.
  void validate() const;
};

/// Thompson-style construction; the language of the result equals the
/// language denoted by the AST.
Nfa compile_nfa(const RegexAst& ast);

/// Subset construction with epsilon closure.  The result has total
/// transitions (a sink subset is materialized when needed).
Dfa determinize(const Nfa& nfa);

/// Language-preserving minimization.  The result is total, has all
/// states reachable, no two states equivalent, and canonical numbering
/// (breadth-first from the initial state, letters in alphabet order).
Dfa minimize(const Dfa& dfa);

/// Membership test; letters of w must belong to the alphabet.
bool accepts(const Dfa& dfa, std::string_view w);

/// NFA membership by direct simulation (used as a cross-check oracle).
bool nfa_accepts(const Nfa& nfa, std::string_view w);

/// Convenience: parse, compile, determinize, minimize.
Dfa minimal_dfa(std::string_view regex, const Alphabet& alphabet);

/// Alphabet inferred from the distinct letters of the regex text
/// (sorted); throws if the regex mentions no letters.
Alphabet infer_alphabet(std::string_view regex);

}  // namespace fo2

#endif
