#include "fo2kit/automata.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <utility>

#include "fo2kit/error.hpp"

namespace fo2 {

void Dfa::validate() const {
  if (states <= 0)
    throw Error("dfa: must have at least one state");
  if (initial < 0 || initial >= states)
    throw Error("dfa: initial state out of range");
  if (static_cast<int>(accepting.size()) != states)
    throw Error("dfa: accepting vector size mismatch");
  if (static_cast<int>(next.size()) != states)
    throw Error("dfa: transition table must have one row per state");
  for (const auto& row : next) {
    if (static_cast<int>(row.size()) != alphabet.size())
      throw Error("dfa: transition row size must equal alphabet size");
    for (int q : row)
      if (q < 0 || q >= states)
        throw Error("dfa: transition target out of range");
  }
}

namespace {

struct Fragment {
  int in;
  int out;
};

class NfaBuilder {
public:
  explicit NfaBuilder(const Alphabet& alphabet) { nfa_.alphabet = alphabet; }

  int fresh() { return nfa_.states++; }
  void edge(int from, int symbol, int to) {
    nfa_.transitions.push_back({from, symbol, to});
  }

  Fragment build(const RegexPtr& node) {
    using Kind = RegexNode::Kind;
    switch (node->kind) {
      case Kind::EmptySet: {
        Fragment f{fresh(), fresh()};
        return f;  // no path from in to out
      }
      case Kind::Epsilon: {
        Fragment f{fresh(), fresh()};
        edge(f.in, Nfa::kEpsilon, f.out);
        return f;
      }
      case Kind::Letter: {
        Fragment f{fresh(), fresh()};
        edge(f.in, nfa_.alphabet.index_checked(node->letter), f.out);
        return f;
      }
      case Kind::Concat: {
        Fragment l = build(node->left);
        Fragment r = build(node->right);
        edge(l.out, Nfa::kEpsilon, r.in);
        return {l.in, r.out};
      }
      case Kind::Union: {
        Fragment l = build(node->left);
        Fragment r = build(node->right);
        Fragment f{fresh(), fresh()};
        edge(f.in, Nfa::kEpsilon, l.in);
        edge(f.in, Nfa::kEpsilon, r.in);
        edge(l.out, Nfa::kEpsilon, f.out);
        edge(r.out, Nfa::kEpsilon, f.out);
        return f;
      }
      case Kind::Star: {
        Fragment c = build(node->left);
        Fragment f{fresh(), fresh()};
        edge(f.in, Nfa::kEpsilon, c.in);
        edge(f.in, Nfa::kEpsilon, f.out);
        edge(c.out, Nfa::kEpsilon, c.in);
        edge(c.out, Nfa::kEpsilon, f.out);
        return f;
      }
      case Kind::Plus: {
        Fragment c = build(node->left);
        Fragment f{fresh(), fresh()};
        edge(f.in, Nfa::kEpsilon, c.in);
        edge(c.out, Nfa::kEpsilon, c.in);
        edge(c.out, Nfa::kEpsilon, f.out);
        return f;
      }
    }
    throw Error("compile_nfa: bad node kind");
  }

  Nfa finish(const Fragment& f) {
    nfa_.initial = {f.in};
    nfa_.accepting = {f.out};
    return std::move(nfa_);
  }

private:
  Nfa nfa_;
};

// Adjacency view of an NFA, split into epsilon and per-letter edges.
struct NfaAdj {
  std::vector<std::vector<int>> eps;                 // state -> states
  std::vector<std::vector<std::vector<int>>> step;   // state -> letter -> states

  explicit NfaAdj(const Nfa& nfa)
      : eps(nfa.states), step(nfa.states) {
    for (auto& per_letter : step)
      per_letter.resize(static_cast<size_t>(nfa.alphabet.size()));
    for (const auto& t : nfa.transitions) {
      if (t.symbol == Nfa::kEpsilon)
        eps[t.from].push_back(t.to);
      else
        step[t.from][t.symbol].push_back(t.to);
    }
  }
};

// Epsilon closure of a sorted state set, returned sorted.
std::vector<int> closure(const NfaAdj& adj, std::vector<int> states) {
  std::vector<bool> seen(adj.eps.size(), false);
  std::queue<int> work;
  for (int q : states) {
    if (!seen[q]) {
      seen[q] = true;
      work.push(q);
    }
  }
  while (!work.empty()) {
    int q = work.front();
    work.pop();
    for (int r : adj.eps[q])
      if (!seen[r]) {
        seen[r] = true;
        work.push(r);
      }
  }
  std::vector<int> out;
  for (size_t q = 0; q < seen.size(); ++q)
    if (seen[q])
      out.push_back(static_cast<int>(q));
  return out;
}

}  // namespace

Nfa compile_nfa(const RegexAst& ast) {
  NfaBuilder b(ast.alphabet);
  Fragment f = b.build(ast.root);
  return b.finish(f);
}

bool nfa_accepts(const Nfa& nfa, std::string_view w) {
  NfaAdj adj(nfa);
  std::vector<int> current = closure(adj, nfa.initial);
  for (char c : w) {
    int a = nfa.alphabet.index_checked(c);
    std::set<int> nexts;
    for (int q : current)
      for (int r : adj.step[q][a])
        nexts.insert(r);
    current = closure(adj, std::vector<int>(nexts.begin(), nexts.end()));
  }
  for (int q : current)
    for (int f : nfa.accepting)
      if (q == f)
        return true;
  return false;
}

Dfa determinize(const Nfa& nfa) {
  NfaAdj adj(nfa);
  const int nletters = nfa.alphabet.size();
  std::vector<bool> is_accepting_state(nfa.states, false);
  for (int q : nfa.accepting)
    is_accepting_state[q] = true;

  std::map<std::vector<int>, int> index_of;
  std::vector<std::vector<int>> subsets;
  auto intern = [&](std::vector<int> subset) {
    auto [it, inserted] = index_of.try_emplace(std::move(subset), subsets.size());
    if (inserted)
      subsets.push_back(it->first);
    return it->second;
  };

  Dfa dfa;
  dfa.alphabet = nfa.alphabet;
  dfa.initial = intern(closure(adj, nfa.initial));
  for (size_t i = 0; i < subsets.size(); ++i) {
    std::vector<int> row(static_cast<size_t>(nletters));
    for (int a = 0; a < nletters; ++a) {
      std::set<int> nexts;
      for (int q : subsets[i])
        for (int r : adj.step[q][a])
          nexts.insert(r);
      row[a] = intern(closure(adj, std::vector<int>(nexts.begin(), nexts.end())));
    }
    dfa.next.push_back(std::move(row));
  }
  dfa.states = static_cast<int>(subsets.size());
  dfa.accepting.assign(static_cast<size_t>(dfa.states), false);
  for (int i = 0; i < dfa.states; ++i)
    for (int q : subsets[static_cast<size_t>(i)])
      if (is_accepting_state[q])
        dfa.accepting[static_cast<size_t>(i)] = true;
  return dfa;
}

Dfa minimize(const Dfa& dfa) {
  dfa.validate();
  const int nletters = dfa.alphabet.size();

  // Restrict to reachable states.
  std::vector<int> order;
  std::vector<int> reached(static_cast<size_t>(dfa.states), -1);
  order.push_back(dfa.initial);
  reached[static_cast<size_t>(dfa.initial)] = 0;
  for (size_t i = 0; i < order.size(); ++i)
    for (int a = 0; a < nletters; ++a) {
      int t = dfa.next[static_cast<size_t>(order[i])][static_cast<size_t>(a)];
      if (reached[static_cast<size_t>(t)] < 0) {
        reached[static_cast<size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  const int n = static_cast<int>(order.size());

  // Moore partition refinement on reachable states.
  std::vector<int> cls(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    cls[static_cast<size_t>(i)] = dfa.accepting[static_cast<size_t>(order[static_cast<size_t>(i)])] ? 1 : 0;
  for (;;) {
    std::map<std::vector<int>, int> sig_index;
    std::vector<int> next_cls(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      std::vector<int> sig;
      sig.reserve(static_cast<size_t>(nletters) + 1);
      sig.push_back(cls[static_cast<size_t>(i)]);
      for (int a = 0; a < nletters; ++a) {
        int t = dfa.next[static_cast<size_t>(order[static_cast<size_t>(i)])][static_cast<size_t>(a)];
        sig.push_back(cls[static_cast<size_t>(reached[static_cast<size_t>(t)])]);
      }
      auto [it, inserted] = sig_index.try_emplace(std::move(sig), sig_index.size());
      next_cls[static_cast<size_t>(i)] = it->second;
    }
    bool stable = std::set<int>(cls.begin(), cls.end()).size() == sig_index.size();
    cls = std::move(next_cls);
    if (stable)
      break;
  }

  // Quotient, then canonical BFS renumbering.
  auto class_of = [&](int original_state) {
    return cls[static_cast<size_t>(reached[static_cast<size_t>(original_state)])];
  };
  std::map<int, int> renumber;
  std::vector<int> rep;  // canonical index -> representative original state
  std::queue<int> work;
  auto visit = [&](int original_state) {
    int c = class_of(original_state);
    if (!renumber.contains(c)) {
      renumber[c] = static_cast<int>(rep.size());
      rep.push_back(original_state);
      work.push(original_state);
    }
    return renumber[c];
  };

  Dfa out;
  out.alphabet = dfa.alphabet;
  out.initial = visit(dfa.initial);
  while (!work.empty()) {
    int q = work.front();
    work.pop();
    for (int a = 0; a < nletters; ++a)
      visit(dfa.next[static_cast<size_t>(q)][static_cast<size_t>(a)]);
  }
  out.states = static_cast<int>(rep.size());
  out.accepting.assign(static_cast<size_t>(out.states), false);
  out.next.assign(static_cast<size_t>(out.states),
                  std::vector<int>(static_cast<size_t>(nletters)));
  for (int i = 0; i < out.states; ++i) {
    int q = rep[static_cast<size_t>(i)];
    out.accepting[static_cast<size_t>(i)] = dfa.accepting[static_cast<size_t>(q)];
    for (int a = 0; a < nletters; ++a)
      out.next[static_cast<size_t>(i)][static_cast<size_t>(a)] =
          renumber.at(class_of(dfa.next[static_cast<size_t>(q)][static_cast<size_t>(a)]));
  }
  return out;
}

bool accepts(const Dfa& dfa, std::string_view w) {
  int q = dfa.initial;
  for (char c : w)
    q = dfa.next[static_cast<size_t>(q)][static_cast<size_t>(dfa.alphabet.index_checked(c))];
  return dfa.accepting[static_cast<size_t>(q)];
}

Dfa minimal_dfa(std::string_view regex, const Alphabet& alphabet) {
  return minimize(determinize(compile_nfa(parse_regex(regex, alphabet))));
}

Alphabet infer_alphabet(std::string_view regex) {
  std::set<char> letters;
  for (char c : regex)
    if (c != '|' && c != '*' && c != '+' && c != '(' && c != ')')
      letters.insert(c);
  if (letters.empty())
    throw Error("cannot infer an alphabet: the regex mentions no letters");
  return Alphabet(std::string(letters.begin(), letters.end()));
}

}  // namespace fo2
