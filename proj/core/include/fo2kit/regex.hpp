#ifndef FO2KIT_REGEX_HPP
#define FO2KIT_REGEX_HPP

#include <memory>
#include <string>
#include <string_view>

#include "fo2kit/alphabet.hpp"

namespace fo2 {

/// Regular expression AST.  Grammar (by increasing precedence):
///
///   union:   e '|' e
///   concat:  e e            (juxtaposition)
///   postfix: e '*' | e '+'
///   atom:    letter | '(' e ')'
///
/// The empty-set and epsilon nodes have no surface syntax; they arise as
/// building blocks (e.g. the empty alternative) and in tests.
struct RegexNode;
using RegexPtr = std::shared_ptr<const RegexNode>;

struct RegexNode {
  enum class Kind { EmptySet, Epsilon, Letter, Concat, Union, Star, Plus };

  Kind kind;
  char letter = 0;          // Kind::Letter
  RegexPtr left, right;     // children; Star/Plus use left only

  static RegexPtr empty_set();
  static RegexPtr epsilon();
  static RegexPtr make_letter(char c);
  static RegexPtr concat(RegexPtr l, RegexPtr r);
  static RegexPtr alt(RegexPtr l, RegexPtr r);
  static RegexPtr star(RegexPtr child);
  static RegexPtr plus(RegexPtr child);
};

struct RegexAst {
  Alphabet alphabet;
  RegexPtr root;
};

/// Parses text against the grammar above.  Every letter must belong to
/// the declared alphabet.  Throws ParseError with the failing offset.
RegexAst parse_regex(std::string_view text, const Alphabet& alphabet);

/// Printable form with explicit grouping (debugging aid).
std::string to_string(const RegexPtr& node);

}  // namespace fo2

#endif
