#include "fo2kit/regex.hpp"

#include <utility>

#include "fo2kit/error.hpp"

namespace fo2 {

RegexPtr RegexNode::empty_set() {
  return std::make_shared<RegexNode>(RegexNode{Kind::EmptySet});
}
RegexPtr RegexNode::epsilon() {
  return std::make_shared<RegexNode>(RegexNode{Kind::Epsilon});
}
RegexPtr RegexNode::make_letter(char c) {
  return std::make_shared<RegexNode>(RegexNode{Kind::Letter, c});
}
RegexPtr RegexNode::concat(RegexPtr l, RegexPtr r) {
  return std::make_shared<RegexNode>(
      RegexNode{Kind::Concat, 0, std::move(l), std::move(r)});
}
RegexPtr RegexNode::alt(RegexPtr l, RegexPtr r) {
  return std::make_shared<RegexNode>(
      RegexNode{Kind::Union, 0, std::move(l), std::move(r)});
}
RegexPtr RegexNode::star(RegexPtr child) {
  return std::make_shared<RegexNode>(
      RegexNode{Kind::Star, 0, std::move(child), nullptr});
}
RegexPtr RegexNode::plus(RegexPtr child) {
  return std::make_shared<RegexNode>(
      RegexNode{Kind::Plus, 0, std::move(child), nullptr});
}

namespace {

// Recursive-descent parser.  union > concat > postfix > atom, where ">"
// means "binds looser".
class Parser {
public:
  Parser(std::string_view text, const Alphabet& alphabet)
      : text_(text), alphabet_(alphabet) {}

  RegexPtr parse() {
    RegexPtr e = parse_union();
    if (pos_ != text_.size())
      fail("unexpected character");
    return e;
  }

private:
  RegexPtr parse_union() {
    RegexPtr e = parse_concat();
    while (peek() == '|') {
      ++pos_;
      e = RegexNode::alt(std::move(e), parse_concat());
    }
    return e;
  }

  RegexPtr parse_concat() {
    RegexPtr e;
    while (starts_atom(peek())) {
      RegexPtr f = parse_postfix();
      e = e ? RegexNode::concat(std::move(e), std::move(f)) : std::move(f);
    }
    // An empty alternative like "a|" denotes epsilon.
    return e ? e : RegexNode::epsilon();
  }

  RegexPtr parse_postfix() {
    RegexPtr e = parse_atom();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        e = RegexNode::star(std::move(e));
      } else if (c == '+') {
        ++pos_;
        e = RegexNode::plus(std::move(e));
      } else {
        return e;
      }
    }
  }

  RegexPtr parse_atom() {
    char c = peek();
    if (c == '(') {
      size_t open = pos_++;
      RegexPtr e = parse_union();
      if (peek() != ')')
        fail("unbalanced parenthesis opened", open);
      ++pos_;
      return e;
    }
    if (!starts_atom(c))
      fail("expected a letter or '('");
    if (!alphabet_.contains(c))
      fail(std::string("letter '") + c + "' is not in the alphabet \"" +
           alphabet_.letters() + "\"");
    ++pos_;
    return RegexNode::make_letter(c);
  }

  static bool is_meta(char c) {
    return c == '|' || c == '*' || c == '+' || c == '(' || c == ')' || c == 0;
  }
  static bool starts_atom(char c) { return c == '(' || !is_meta(c); }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : 0; }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, size_t at) const {
    throw ParseError("regex syntax error: " + msg, at);
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  size_t pos_ = 0;
};

}  // namespace

RegexAst parse_regex(std::string_view text, const Alphabet& alphabet) {
  Parser p(text, alphabet);
  return RegexAst{alphabet, p.parse()};
}

std::string to_string(const RegexPtr& node) {
  if (!node)
    return "<null>";
  using Kind = RegexNode::Kind;
  switch (node->kind) {
    case Kind::EmptySet: return "∅";
    case Kind::Epsilon: return "ε";
    case Kind::Letter: return std::string(1, node->letter);
    case Kind::Concat:
      return "(" + to_string(node->left) + to_string(node->right) + ")";
    case Kind::Union:
      return "(" + to_string(node->left) + "|" + to_string(node->right) + ")";
    case Kind::Star: return to_string(node->left) + "*";
    case Kind::Plus: return to_string(node->left) + "+";
  }
  return "<bad>";
}

}  // namespace fo2
