#ifndef FO2KIT_FORMULA_HPP
#define FO2KIT_FORMULA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fo2kit/alphabet.hpp"

namespace fo2 {

/// The two variables of the two-variable fragment.
enum class Var : std::uint8_t { X = 0, Y = 1 };

inline Var other(Var v) { return v == Var::X ? Var::Y : Var::X; }
inline const char* var_name(Var v) { return v == Var::X ? "x" : "y"; }

using FormulaId = std::uint32_t;

enum class FKind : std::uint8_t {
  True,
  False,
  Letter,  // P_sym(v1)
  Less,    // v1 < v2
  Succ,    // v2 = v1 + 1
  Eq,      // v1 = v2
  Not,
  And,
  Or,
  Exists,  // exists v1 . child
  Forall,  // forall v1 . child
};

/// Hash-consed DAG of two-variable formulas.  Structurally equal nodes
/// share one id, and children always have smaller ids than their parent,
/// so ascending id order is a topological order.
///
/// Letter tests carry an opaque symbol index; words are evaluated as
/// sequences of symbol indices, which lets the same machinery serve
/// formulas over the input alphabet and over extended alphabets.
class FormulaArena {
public:
  FormulaArena();

  FormulaId tru() { return 0; }
  FormulaId fals() { return 1; }
  FormulaId letter(int symbol, Var v);
  FormulaId less(Var a, Var b);
  FormulaId successor(Var a, Var b);
  FormulaId equals(Var a, Var b);
  FormulaId negation(FormulaId f);
  FormulaId conj(std::vector<FormulaId> children);
  FormulaId disj(std::vector<FormulaId> children);
  FormulaId exists(Var v, FormulaId body);
  FormulaId forall(Var v, FormulaId body);

  FKind kind(FormulaId f) const { return nodes_[f].kind; }
  Var var1(FormulaId f) const { return nodes_[f].v1; }
  Var var2(FormulaId f) const { return nodes_[f].v2; }
  int symbol(FormulaId f) const { return nodes_[f].symbol; }
  std::span<const FormulaId> children(FormulaId f) const {
    const Node& n = nodes_[f];
    return {child_pool_.data() + n.child_begin, n.child_count};
  }

  /// False iff the formula is in FO2(<): no successor atom occurs.
  bool uses_succ(FormulaId f) const { return (flags_[f] & kUsesSucc) != 0; }
  /// Bit 0: x occurs free; bit 1: y occurs free.
  std::uint8_t free_vars(FormulaId f) const { return flags_[f] & 3; }

  std::size_t size() const { return nodes_.size(); }
  /// Number of DAG nodes reachable from f.
  std::size_t reachable_size(FormulaId f) const;
  /// Size of the formula unfolded as a tree (saturating at ~1e18).
  std::uint64_t tree_size(FormulaId f) const;

  /// Node budget: constructors throw BudgetError once the arena holds
  /// this many nodes.  0 means unlimited.
  void set_node_budget(std::size_t budget) { node_budget_ = budget; }
  std::size_t node_budget() const { return node_budget_; }

  /// Logically equivalent formula, never larger (reachable node count):
  /// constant folding, double-negation removal, and/or flattening and
  /// duplicate-child removal, plus the empty-word-safe quantifier folds
  /// (exists v false -> false, forall v true -> true).
  FormulaId simplify(FormulaId f);

private:
  struct Node {
    FKind kind;
    Var v1, v2;
    std::int32_t symbol;
    std::uint32_t child_begin;
    std::uint32_t child_count;
  };
  static constexpr std::uint8_t kUsesSucc = 4;

  FormulaId intern(FKind kind, Var v1, Var v2, std::int32_t symbol,
                   std::span<const FormulaId> children);
  std::uint64_t node_hash(FKind kind, Var v1, Var v2, std::int32_t symbol,
                          std::span<const FormulaId> children) const;
  bool node_equals(FormulaId f, FKind kind, Var v1, Var v2, std::int32_t symbol,
                   std::span<const FormulaId> children) const;
  void grow_hash_table();

  std::vector<Node> nodes_;
  std::vector<FormulaId> child_pool_;
  std::vector<std::uint8_t> flags_;
  std::vector<std::uint32_t> slots_;  // open addressing, id + 1 (0 = empty)
  std::size_t node_budget_ = 0;
  std::vector<FormulaId> simplify_cache_;
};

/// Variable assignment: 1-based positions, absent = unassigned.
struct Assignment {
  std::optional<int> x;
  std::optional<int> y;
};

/// Standard first-order semantics on a word given as symbol indices.
/// Sentences on the empty word follow the empty-domain convention
/// (exists -> false, forall -> true).  Throws Error when a free variable
/// of f is unassigned, or when the word is longer than 63 positions.
bool eval(const FormulaArena& arena, FormulaId f, std::span<const int> word,
          const Assignment& a = {});

/// Word helper: letters to symbol indices.
std::vector<int> to_symbols(const Alphabet& alphabet, std::string_view w);

bool eval(const FormulaArena& arena, FormulaId f, const Alphabet& alphabet,
          std::string_view w, const Assignment& a = {});

/// Reusable evaluator for checking one formula against many words; the
/// reachable-node scan is done once.
class Evaluator {
public:
  Evaluator(const FormulaArena& arena, FormulaId root);
  bool operator()(std::span<const int> word, const Assignment& a = {}) const;

private:
  const FormulaArena& arena_;
  FormulaId root_;
  std::vector<FormulaId> topo_;          // reachable ids, ascending
  std::vector<std::int32_t> compact_;    // id -> index in topo_, or -1
  mutable std::vector<std::uint64_t> rows_;
};

/// A sentence equivalent to the disjunction of two sentences; preserves
/// the FO2(<) property of its inputs.
FormulaId union_combine(FormulaArena& arena, FormulaId f, FormulaId g);

enum class ConcatOrder { Left, Right };

/// Marked concatenation for sentences f_K defining K over symbols other
/// than the marker and f_L defining L:
///   Left:  a sentence defining K.marker.L, splitting at the first marker;
///   Right: a sentence defining L.marker.K, splitting at the last marker.
/// Every quantifier of f_K / f_L is relativized to the corresponding
/// side of the marker.  Throws Error if f_K tests the marker symbol.
/// The result is FO2(<) when both inputs are.
FormulaId marked_concat(FormulaArena& arena, FormulaId f_K, int marker,
                        FormulaId f_L, ConcatOrder order);

/// S-expression printer; symbol_name renders letter-test symbols.
std::string to_sexpr(const FormulaArena& arena, FormulaId f,
                     const std::function<std::string(int)>& symbol_name);
std::string to_sexpr(const FormulaArena& arena, FormulaId f,
                     const Alphabet& alphabet);

/// Inverse of to_sexpr over the given alphabet (letters are single
/// characters).  Throws ParseError on malformed input.
FormulaId parse_sexpr(FormulaArena& arena, std::string_view text,
                      const Alphabet& alphabet);

}  // namespace fo2

#endif
