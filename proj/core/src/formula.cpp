#include "fo2kit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "fo2kit/error.hpp"

namespace fo2 {

namespace {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

FormulaArena::FormulaArena() {
  slots_.assign(64, 0);
  intern(FKind::True, Var::X, Var::X, 0, {});
  intern(FKind::False, Var::X, Var::X, 0, {});
}

std::uint64_t FormulaArena::node_hash(FKind kind, Var v1, Var v2,
                                      std::int32_t symbol,
                                      std::span<const FormulaId> children) const {
  std::uint64_t h = static_cast<std::uint64_t>(kind) * 0x100000001b3ull;
  h = mix(h, static_cast<std::uint64_t>(v1));
  h = mix(h, static_cast<std::uint64_t>(v2));
  h = mix(h, static_cast<std::uint64_t>(static_cast<std::uint32_t>(symbol)));
  for (FormulaId c : children)
    h = mix(h, c);
  return h;
}

bool FormulaArena::node_equals(FormulaId f, FKind kind, Var v1, Var v2,
                               std::int32_t symbol,
                               std::span<const FormulaId> children) const {
  const Node& n = nodes_[f];
  if (n.kind != kind || n.v1 != v1 || n.v2 != v2 || n.symbol != symbol ||
      n.child_count != children.size())
    return false;
  for (std::uint32_t i = 0; i < n.child_count; ++i)
    if (child_pool_[n.child_begin + i] != children[i])
      return false;
  return true;
}

void FormulaArena::grow_hash_table() {
  std::vector<std::uint32_t> old = std::move(slots_);
  slots_.assign(old.size() * 2, 0);
  const std::uint64_t mask = slots_.size() - 1;
  for (std::uint32_t entry : old) {
    if (entry == 0)
      continue;
    FormulaId f = entry - 1;
    const Node& n = nodes_[f];
    std::uint64_t h = node_hash(n.kind, n.v1, n.v2, n.symbol,
                                {child_pool_.data() + n.child_begin, n.child_count});
    std::uint64_t i = h & mask;
    while (slots_[i] != 0)
      i = (i + 1) & mask;
    slots_[i] = entry;
  }
}

FormulaId FormulaArena::intern(FKind kind, Var v1, Var v2, std::int32_t symbol,
                               std::span<const FormulaId> children) {
  const std::uint64_t mask = slots_.size() - 1;
  std::uint64_t h = node_hash(kind, v1, v2, symbol, children);
  std::uint64_t i = h & mask;
  while (slots_[i] != 0) {
    FormulaId f = slots_[i] - 1;
    if (node_equals(f, kind, v1, v2, symbol, children))
      return f;
    i = (i + 1) & mask;
  }

  if (node_budget_ != 0 && nodes_.size() >= node_budget_)
    throw BudgetError("formula node budget of " + std::to_string(node_budget_) +
                      " exceeded");

  Node n;
  n.kind = kind;
  n.v1 = v1;
  n.v2 = v2;
  n.symbol = symbol;
  n.child_begin = static_cast<std::uint32_t>(child_pool_.size());
  n.child_count = static_cast<std::uint32_t>(children.size());
  child_pool_.insert(child_pool_.end(), children.begin(), children.end());

  std::uint8_t flags = 0;
  switch (kind) {
    case FKind::Letter:
      flags = static_cast<std::uint8_t>(1u << static_cast<unsigned>(v1));
      break;
    case FKind::Less:
    case FKind::Eq:
      flags = static_cast<std::uint8_t>((1u << static_cast<unsigned>(v1)) |
                                        (1u << static_cast<unsigned>(v2)));
      break;
    case FKind::Succ:
      flags = static_cast<std::uint8_t>((1u << static_cast<unsigned>(v1)) |
                                        (1u << static_cast<unsigned>(v2)) |
                                        kUsesSucc);
      break;
    case FKind::Exists:
    case FKind::Forall: {
      std::uint8_t child_flags = flags_[children[0]];
      flags = static_cast<std::uint8_t>(
          (child_flags & ~(1u << static_cast<unsigned>(v1))) |
          (child_flags & kUsesSucc));
      break;
    }
    default:
      for (FormulaId c : children)
        flags |= flags_[c];
      break;
  }

  FormulaId f = static_cast<FormulaId>(nodes_.size());
  nodes_.push_back(n);
  flags_.push_back(flags);
  slots_[i] = f + 1;
  if (nodes_.size() * 10 >= slots_.size() * 7)
    grow_hash_table();
  return f;
}

FormulaId FormulaArena::letter(int symbol, Var v) {
  return intern(FKind::Letter, v, v, symbol, {});
}
FormulaId FormulaArena::less(Var a, Var b) {
  return intern(FKind::Less, a, b, 0, {});
}
FormulaId FormulaArena::successor(Var a, Var b) {
  return intern(FKind::Succ, a, b, 0, {});
}
FormulaId FormulaArena::equals(Var a, Var b) {
  return intern(FKind::Eq, a, b, 0, {});
}
FormulaId FormulaArena::negation(FormulaId f) {
  return intern(FKind::Not, Var::X, Var::X, 0, {{f}});
}
FormulaId FormulaArena::conj(std::vector<FormulaId> children) {
  return intern(FKind::And, Var::X, Var::X, 0, children);
}
FormulaId FormulaArena::disj(std::vector<FormulaId> children) {
  return intern(FKind::Or, Var::X, Var::X, 0, children);
}
FormulaId FormulaArena::exists(Var v, FormulaId body) {
  return intern(FKind::Exists, v, v, 0, {{body}});
}
FormulaId FormulaArena::forall(Var v, FormulaId body) {
  return intern(FKind::Forall, v, v, 0, {{body}});
}

std::size_t FormulaArena::reachable_size(FormulaId f) const {
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<FormulaId> stack{f};
  std::size_t count = 0;
  seen[f] = true;
  while (!stack.empty()) {
    FormulaId g = stack.back();
    stack.pop_back();
    ++count;
    for (FormulaId c : children(g))
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
  }
  return count;
}

std::uint64_t FormulaArena::tree_size(FormulaId f) const {
  constexpr std::uint64_t kCap = 1000000000000000000ull;
  std::unordered_map<FormulaId, std::uint64_t> memo;
  // Children have smaller ids; a reachable scan in ascending order is a
  // topological order.
  std::vector<FormulaId> reach;
  {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<FormulaId> stack{f};
    seen[f] = true;
    while (!stack.empty()) {
      FormulaId g = stack.back();
      stack.pop_back();
      reach.push_back(g);
      for (FormulaId c : children(g))
        if (!seen[c]) {
          seen[c] = true;
          stack.push_back(c);
        }
    }
    std::sort(reach.begin(), reach.end());
  }
  for (FormulaId g : reach) {
    std::uint64_t total = 1;
    for (FormulaId c : children(g)) {
      std::uint64_t cs = memo.at(c);
      total = total > kCap - cs ? kCap : total + cs;
    }
    memo[g] = total;
  }
  return memo.at(f);
}

FormulaId FormulaArena::simplify(FormulaId f) {
  simplify_cache_.resize(nodes_.size(), static_cast<FormulaId>(-1));
  if (simplify_cache_[f] != static_cast<FormulaId>(-1))
    return simplify_cache_[f];

  FormulaId result = f;
  switch (kind(f)) {
    case FKind::True:
    case FKind::False:
    case FKind::Letter:
    case FKind::Less:
    case FKind::Succ:
    case FKind::Eq:
      break;
    case FKind::Not: {
      FormulaId c = simplify(children(f)[0]);
      if (kind(c) == FKind::True)
        result = fals();
      else if (kind(c) == FKind::False)
        result = tru();
      else if (kind(c) == FKind::Not)
        result = children(c)[0];
      else
        result = negation(c);
      break;
    }
    case FKind::And:
    case FKind::Or: {
      const bool is_and = kind(f) == FKind::And;
      const FKind absorbing = is_and ? FKind::False : FKind::True;
      const FKind neutral = is_and ? FKind::True : FKind::False;
      std::vector<FormulaId> flat;
      bool absorbed = false;
      auto flatten = [&](auto&& self, FormulaId g) -> void {
        // Copy: creating nodes below may reallocate the child pool.
        const std::vector<FormulaId> kids(children(g).begin(), children(g).end());
        for (FormulaId c : kids) {
          FormulaId s = simplify(c);
          if (kind(s) == absorbing) {
            absorbed = true;
            return;
          }
          if (kind(s) == neutral)
            continue;
          if (kind(s) == kind(f))
            self(self, s);
          else
            flat.push_back(s);
          if (absorbed)
            return;
        }
      };
      flatten(flatten, f);
      if (absorbed) {
        result = is_and ? fals() : tru();
        break;
      }
      std::sort(flat.begin(), flat.end());
      flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
      if (flat.empty())
        result = is_and ? tru() : fals();
      else if (flat.size() == 1)
        result = flat[0];
      else
        result = is_and ? conj(std::move(flat)) : disj(std::move(flat));
      break;
    }
    case FKind::Exists: {
      FormulaId c = simplify(children(f)[0]);
      // Note: exists v true is NOT true (it fails on the empty word).
      result = kind(c) == FKind::False ? fals() : exists(var1(f), c);
      break;
    }
    case FKind::Forall: {
      FormulaId c = simplify(children(f)[0]);
      result = kind(c) == FKind::True ? tru() : forall(var1(f), c);
      break;
    }
  }
  simplify_cache_.resize(nodes_.size(), static_cast<FormulaId>(-1));
  simplify_cache_[f] = result;
  return result;
}

std::vector<int> to_symbols(const Alphabet& alphabet, std::string_view w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (char c : w)
    out.push_back(alphabet.index_checked(c));
  return out;
}

Evaluator::Evaluator(const FormulaArena& arena, FormulaId root)
    : arena_(arena), root_(root) {
  std::vector<bool> seen(arena.size(), false);
  std::vector<FormulaId> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    FormulaId g = stack.back();
    stack.pop_back();
    topo_.push_back(g);
    for (FormulaId c : arena.children(g))
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
  }
  std::sort(topo_.begin(), topo_.end());
  compact_.assign(arena.size(), -1);
  for (std::size_t i = 0; i < topo_.size(); ++i)
    compact_[topo_[i]] = static_cast<std::int32_t>(i);
}

bool Evaluator::operator()(std::span<const int> word, const Assignment& a) const {
  const int n = static_cast<int>(word.size());
  if (n > 63)
    throw Error("eval: words longer than 63 positions are not supported");
  std::uint8_t assigned = (a.x ? 1 : 0) | (a.y ? 2 : 0);
  if ((arena_.free_vars(root_) & ~assigned) != 0)
    throw Error("eval: unassigned free variable");
  if (a.x && (*a.x < 1 || *a.x > n))
    throw Error("eval: assignment for x out of range");
  if (a.y && (*a.y < 1 || *a.y > n))
    throw Error("eval: assignment for y out of range");

  // Truth table per node: row x (0 = unassigned, 1..n positions), bit y.
  const std::size_t width = static_cast<std::size_t>(n) + 1;
  const std::uint64_t full =
      width == 64 ? ~0ull : ((1ull << width) - 1);
  const std::uint64_t bits1n = full & ~1ull;
  rows_.assign(topo_.size() * width, 0);
  auto row = [&](std::size_t node_idx) {
    return rows_.data() + node_idx * width;
  };

  for (std::size_t i = 0; i < topo_.size(); ++i) {
    FormulaId f = topo_[i];
    std::uint64_t* r = row(i);
    auto child_row = [&](int which) {
      return row(static_cast<std::size_t>(compact_[arena_.children(f)[static_cast<size_t>(which)]]));
    };
    switch (arena_.kind(f)) {
      case FKind::True:
        for (std::size_t x = 0; x < width; ++x)
          r[x] = full;
        break;
      case FKind::False:
        break;
      case FKind::Letter: {
        if (arena_.var1(f) == Var::X) {
          for (int x = 1; x <= n; ++x)
            if (word[static_cast<size_t>(x - 1)] == arena_.symbol(f))
              r[x] = full;
        } else {
          std::uint64_t bits = 0;
          for (int y = 1; y <= n; ++y)
            if (word[static_cast<size_t>(y - 1)] == arena_.symbol(f))
              bits |= 1ull << y;
          for (std::size_t x = 0; x < width; ++x)
            r[x] = bits;
        }
        break;
      }
      case FKind::Less: {
        Var v1 = arena_.var1(f), v2 = arena_.var2(f);
        if (v1 == v2)
          break;  // v < v is false
        if (v1 == Var::X) {
          for (int x = 1; x < n; ++x)
            r[x] = (~((2ull << x) - 1)) & bits1n;  // bits y > x
        } else {
          for (int x = 2; x <= n; ++x)
            r[x] = ((1ull << x) - 1) & bits1n;  // bits 1 <= y < x
        }
        break;
      }
      case FKind::Succ: {
        Var v1 = arena_.var1(f), v2 = arena_.var2(f);
        if (v1 == v2)
          break;
        if (v1 == Var::X) {
          for (int x = 1; x < n; ++x)
            r[x] = 1ull << (x + 1);
        } else {
          for (int x = 2; x <= n; ++x)
            r[x] = 1ull << (x - 1);
        }
        break;
      }
      case FKind::Eq: {
        Var v1 = arena_.var1(f), v2 = arena_.var2(f);
        if (v1 == v2) {
          if (v1 == Var::X) {
            for (int x = 1; x <= n; ++x)
              r[x] = full;
          } else {
            for (std::size_t x = 0; x < width; ++x)
              r[x] = bits1n;
          }
        } else {
          for (int x = 1; x <= n; ++x)
            r[x] = 1ull << x;
        }
        break;
      }
      case FKind::Not: {
        const std::uint64_t* c = child_row(0);
        for (std::size_t x = 0; x < width; ++x)
          r[x] = ~c[x] & full;
        break;
      }
      case FKind::And: {
        for (std::size_t x = 0; x < width; ++x)
          r[x] = full;
        for (int k = 0; k < static_cast<int>(arena_.children(f).size()); ++k) {
          const std::uint64_t* c = child_row(k);
          for (std::size_t x = 0; x < width; ++x)
            r[x] &= c[x];
        }
        break;
      }
      case FKind::Or: {
        for (int k = 0; k < static_cast<int>(arena_.children(f).size()); ++k) {
          const std::uint64_t* c = child_row(k);
          for (std::size_t x = 0; x < width; ++x)
            r[x] |= c[x];
        }
        break;
      }
      case FKind::Exists: {
        const std::uint64_t* c = child_row(0);
        if (arena_.var1(f) == Var::X) {
          std::uint64_t any = 0;
          for (int x = 1; x <= n; ++x)
            any |= c[x];
          for (std::size_t x = 0; x < width; ++x)
            r[x] = any;
        } else {
          for (std::size_t x = 0; x < width; ++x)
            r[x] = (c[x] & bits1n) ? full : 0;
        }
        break;
      }
      case FKind::Forall: {
        const std::uint64_t* c = child_row(0);
        if (arena_.var1(f) == Var::X) {
          std::uint64_t all = full;
          for (int x = 1; x <= n; ++x)
            all &= c[x];
          for (std::size_t x = 0; x < width; ++x)
            r[x] = all;
        } else {
          for (std::size_t x = 0; x < width; ++x)
            r[x] = (c[x] & bits1n) == bits1n ? full : 0;
        }
        break;
      }
    }
  }

  int px = a.x.value_or(0);
  int py = a.y.value_or(0);
  return (row(static_cast<std::size_t>(compact_[root_]))[px] >> py) & 1;
}

bool eval(const FormulaArena& arena, FormulaId f, std::span<const int> word,
          const Assignment& a) {
  return Evaluator(arena, f)(word, a);
}

bool eval(const FormulaArena& arena, FormulaId f, const Alphabet& alphabet,
          std::string_view w, const Assignment& a) {
  auto symbols = to_symbols(alphabet, w);
  return eval(arena, f, symbols, a);
}

FormulaId union_combine(FormulaArena& arena, FormulaId f, FormulaId g) {
  return arena.simplify(arena.disj({f, g}));
}

namespace {

// Rewrites every quantifier (exists v b) into (exists v (guard(v) and b))
// and (forall v b) into (forall v (guard(v) -> b)).
class Relativizer {
public:
  Relativizer(FormulaArena& arena, FormulaId guard_x, FormulaId guard_y)
      : arena_(arena), guards_{guard_x, guard_y} {}

  FormulaId run(FormulaId f) {
    auto it = memo_.find(f);
    if (it != memo_.end())
      return it->second;
    FormulaId result;
    switch (arena_.kind(f)) {
      case FKind::Exists: {
        Var v = arena_.var1(f);
        FormulaId body = run(arena_.children(f)[0]);
        result = arena_.exists(v, arena_.conj({guard(v), body}));
        break;
      }
      case FKind::Forall: {
        Var v = arena_.var1(f);
        FormulaId body = run(arena_.children(f)[0]);
        result = arena_.forall(v, arena_.disj({arena_.negation(guard(v)), body}));
        break;
      }
      case FKind::Not:
        result = arena_.negation(run(arena_.children(f)[0]));
        break;
      case FKind::And:
      case FKind::Or: {
        const auto span = arena_.children(f);
        const std::vector<FormulaId> kids(span.begin(), span.end());
        std::vector<FormulaId> cs;
        for (FormulaId c : kids)
          cs.push_back(run(c));
        result = arena_.kind(f) == FKind::And ? arena_.conj(std::move(cs))
                                              : arena_.disj(std::move(cs));
        break;
      }
      default:
        result = f;
        break;
    }
    memo_.emplace(f, result);
    return result;
  }

private:
  FormulaId guard(Var v) const {
    return guards_[static_cast<std::size_t>(v)];
  }

  FormulaArena& arena_;
  FormulaId guards_[2];
  std::unordered_map<FormulaId, FormulaId> memo_;
};

bool tests_symbol(const FormulaArena& arena, FormulaId f, int symbol) {
  std::vector<bool> seen(arena.size(), false);
  std::vector<FormulaId> stack{f};
  seen[f] = true;
  while (!stack.empty()) {
    FormulaId g = stack.back();
    stack.pop_back();
    if (arena.kind(g) == FKind::Letter && arena.symbol(g) == symbol)
      return true;
    for (FormulaId c : arena.children(g))
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
  }
  return false;
}

}  // namespace

FormulaId marked_concat(FormulaArena& arena, FormulaId f_K, int marker,
                        FormulaId f_L, ConcatOrder order) {
  if (tests_symbol(arena, f_K, marker))
    throw Error("marked_concat: the factor formula tests the marker symbol");
  // Concatenation with the empty language is empty.
  if (arena.kind(f_K) == FKind::False || arena.kind(f_L) == FKind::False)
    return arena.fals();

  auto guard_pair = [&](auto make) {
    return std::pair<FormulaId, FormulaId>{make(Var::X), make(Var::Y)};
  };

  std::pair<FormulaId, FormulaId> k_guards, l_guards;
  if (order == ConcatOrder::Left) {
    // K occupies the positions strictly before the first marker: no
    // marker at or before v.
    k_guards = guard_pair([&](Var v) {
      Var u = other(v);
      FormulaId at_or_before =
          arena.disj({arena.less(u, v), arena.equals(u, v)});
      return arena.forall(
          u, arena.disj({arena.negation(at_or_before),
                         arena.negation(arena.letter(marker, u))}));
    });
    // L occupies the positions strictly after the first marker: some
    // marker strictly before v.
    l_guards = guard_pair([&](Var v) {
      Var u = other(v);
      return arena.exists(
          u, arena.conj({arena.less(u, v), arena.letter(marker, u)}));
    });
  } else {
    // Mirror image: K after the last marker, L before it.
    k_guards = guard_pair([&](Var v) {
      Var u = other(v);
      FormulaId at_or_after =
          arena.disj({arena.less(v, u), arena.equals(u, v)});
      return arena.forall(
          u, arena.disj({arena.negation(at_or_after),
                         arena.negation(arena.letter(marker, u))}));
    });
    l_guards = guard_pair([&](Var v) {
      Var u = other(v);
      return arena.exists(
          u, arena.conj({arena.less(v, u), arena.letter(marker, u)}));
    });
  }

  FormulaId k_rel =
      Relativizer(arena, k_guards.first, k_guards.second).run(f_K);
  FormulaId l_rel =
      Relativizer(arena, l_guards.first, l_guards.second).run(f_L);
  FormulaId has_marker = arena.exists(Var::X, arena.letter(marker, Var::X));
  return arena.simplify(arena.conj({has_marker, k_rel, l_rel}));
}

namespace {

void print_sexpr(const FormulaArena& arena, FormulaId f,
                 const std::function<std::string(int)>& symbol_name,
                 std::string& out) {
  switch (arena.kind(f)) {
    case FKind::True:
      out += "true";
      return;
    case FKind::False:
      out += "false";
      return;
    case FKind::Letter:
      out += "(letter ";
      out += symbol_name(arena.symbol(f));
      out += ' ';
      out += var_name(arena.var1(f));
      out += ')';
      return;
    case FKind::Less:
    case FKind::Succ:
    case FKind::Eq:
      out += '(';
      out += arena.kind(f) == FKind::Less  ? "less"
             : arena.kind(f) == FKind::Succ ? "succ"
                                            : "eq";
      out += ' ';
      out += var_name(arena.var1(f));
      out += ' ';
      out += var_name(arena.var2(f));
      out += ')';
      return;
    case FKind::Not:
      out += "(not ";
      print_sexpr(arena, arena.children(f)[0], symbol_name, out);
      out += ')';
      return;
    case FKind::And:
    case FKind::Or:
      out += arena.kind(f) == FKind::And ? "(and" : "(or";
      for (FormulaId c : arena.children(f)) {
        out += ' ';
        print_sexpr(arena, c, symbol_name, out);
      }
      out += ')';
      return;
    case FKind::Exists:
    case FKind::Forall:
      out += arena.kind(f) == FKind::Exists ? "(exists " : "(forall ";
      out += var_name(arena.var1(f));
      out += ' ';
      print_sexpr(arena, arena.children(f)[0], symbol_name, out);
      out += ')';
      return;
  }
}

struct SexprParser {
  FormulaArena& arena;
  const Alphabet& alphabet;
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  std::string token() {
    skip_ws();
    if (pos >= text.size())
      throw ParseError("formula: unexpected end of input", pos);
    char c = text[pos];
    if (c == '(' || c == ')') {
      ++pos;
      return std::string(1, c);
    }
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    return std::string(text.substr(start, pos - start));
  }

  Var parse_var() {
    std::size_t at = pos;
    std::string t = token();
    if (t == "x")
      return Var::X;
    if (t == "y")
      return Var::Y;
    throw ParseError("formula: expected variable x or y, got \"" + t + "\"", at);
  }

  void expect_close() {
    std::size_t at = pos;
    if (token() != ")")
      throw ParseError("formula: expected ')'", at);
  }

  FormulaId parse_expr() {
    std::size_t at = pos;
    std::string t = token();
    if (t == "true")
      return arena.tru();
    if (t == "false")
      return arena.fals();
    if (t != "(")
      throw ParseError("formula: expected '(', 'true' or 'false', got \"" + t + "\"", at);

    std::size_t head_at = pos;
    std::string head = token();
    if (head == "letter") {
      std::size_t sym_at = pos;
      std::string sym = token();
      if (sym.size() != 1)
        throw ParseError("formula: letter symbol must be a single character", sym_at);
      Var v = parse_var();
      FormulaId f = arena.letter(alphabet.index_checked(sym[0]), v);
      expect_close();
      return f;
    }
    if (head == "less" || head == "succ" || head == "eq") {
      Var a = parse_var();
      Var b = parse_var();
      FormulaId f = head == "less"  ? arena.less(a, b)
                    : head == "succ" ? arena.successor(a, b)
                                     : arena.equals(a, b);
      expect_close();
      return f;
    }
    if (head == "not") {
      FormulaId f = arena.negation(parse_expr());
      expect_close();
      return f;
    }
    if (head == "and" || head == "or") {
      std::vector<FormulaId> cs;
      for (;;) {
        skip_ws();
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          break;
        }
        cs.push_back(parse_expr());
      }
      return head == "and" ? arena.conj(std::move(cs)) : arena.disj(std::move(cs));
    }
    if (head == "exists" || head == "forall") {
      Var v = parse_var();
      FormulaId body = parse_expr();
      FormulaId f = head == "exists" ? arena.exists(v, body) : arena.forall(v, body);
      expect_close();
      return f;
    }
    throw ParseError("formula: unknown operator \"" + head + "\"", head_at);
  }
};

}  // namespace

std::string to_sexpr(const FormulaArena& arena, FormulaId f,
                     const std::function<std::string(int)>& symbol_name) {
  std::string out;
  print_sexpr(arena, f, symbol_name, out);
  return out;
}

std::string to_sexpr(const FormulaArena& arena, FormulaId f,
                     const Alphabet& alphabet) {
  return to_sexpr(arena, f, [&](int s) {
    return std::string(1, alphabet.letter(s));
  });
}

FormulaId parse_sexpr(FormulaArena& arena, std::string_view text,
                      const Alphabet& alphabet) {
  SexprParser p{arena, alphabet, text};
  FormulaId f = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size())
    throw ParseError("formula: trailing characters", p.pos);
  return f;
}

}  // namespace fo2
