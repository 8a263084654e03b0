#include "fo2kit/monoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "fo2kit/error.hpp"

namespace fo2 {

int Monoid::pow(int x, std::int64_t n) const {
  if (n < 1)
    throw Error("monoid: pow exponent must be >= 1");
  int acc = x;
  int base = x;
  n -= 1;
  while (n > 0) {
    if (n & 1)
      acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

int Monoid::idempotent_power(int x) const {
  int p = x;
  for (int steps = 0; steps <= size(); ++steps) {
    if (mul(p, p) == p)
      return p;
    p = mul(p, x);
  }
  throw Error("monoid: no idempotent power found (table is not closed?)");
}

Monoid::CycleShape Monoid::cycle_shape(int x) const {
  std::vector<int> seen_at(elements.size(), -1);
  int p = x;
  int step = 1;
  while (seen_at[static_cast<size_t>(p)] < 0) {
    seen_at[static_cast<size_t>(p)] = step;
    p = mul(p, x);
    ++step;
  }
  int first = seen_at[static_cast<size_t>(p)];
  return {first, step - first};
}

int Morphism::eval(std::string_view w) const {
  int acc = monoid->identity;
  for (char c : w)
    acc = monoid->mul(acc, image(alphabet.index_checked(c)));
  return acc;
}

Morphism transition_monoid(const Dfa& dfa, std::size_t max_size) {
  dfa.validate();
  const int nletters = dfa.alphabet.size();
  const size_t domain = static_cast<size_t>(dfa.states);

  std::vector<std::vector<int>> generators(static_cast<size_t>(nletters));
  for (int a = 0; a < nletters; ++a) {
    std::vector<int> t(domain);
    for (int q = 0; q < dfa.states; ++q)
      t[static_cast<size_t>(q)] = dfa.next[static_cast<size_t>(q)][static_cast<size_t>(a)];
    generators[static_cast<size_t>(a)] = std::move(t);
  }

  std::vector<int> id(domain);
  std::iota(id.begin(), id.end(), 0);

  // BFS from the identity, multiplying by generators in alphabet order.
  std::map<std::vector<int>, int> index_of;
  std::vector<std::vector<int>> elements;
  auto intern = [&](std::vector<int> t) {
    auto [it, inserted] = index_of.try_emplace(std::move(t), elements.size());
    if (inserted) {
      if (elements.size() >= max_size)
        throw BudgetError("transition monoid exceeds the size cap of " +
                          std::to_string(max_size) + " elements");
      elements.push_back(it->first);
    }
    return it->second;
  };

  intern(id);
  std::vector<int> generator_of(static_cast<size_t>(nletters));
  for (size_t i = 0; i < elements.size(); ++i) {
    for (int a = 0; a < nletters; ++a) {
      std::vector<int> composed(domain);
      const auto& g = generators[static_cast<size_t>(a)];
      const auto& x = elements[i];
      for (size_t q = 0; q < domain; ++q)
        composed[q] = g[static_cast<size_t>(x[q])];
      int j = intern(std::move(composed));
      if (i == 0)
        generator_of[static_cast<size_t>(a)] = j;
    }
  }

  const size_t n = elements.size();
  Monoid m;
  m.domain = dfa.states;
  m.elements = elements;
  m.identity = 0;
  m.generator_of = generator_of;
  m.table.resize(n * n);
  {
    std::vector<int> composed(domain);
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y) {
        for (size_t q = 0; q < domain; ++q)
          composed[q] = elements[y][static_cast<size_t>(elements[x][q])];
        m.table[x * n + y] = index_of.at(composed);
      }
  }

  // Semigroup: closure of the generators under the table.
  m.in_semigroup.assign(n, false);
  {
    std::queue<int> work;
    for (int a = 0; a < nletters; ++a) {
      int g = generator_of[static_cast<size_t>(a)];
      if (!m.in_semigroup[static_cast<size_t>(g)]) {
        m.in_semigroup[static_cast<size_t>(g)] = true;
        work.push(g);
      }
    }
    while (!work.empty()) {
      int x = work.front();
      work.pop();
      for (int a = 0; a < nletters; ++a) {
        int y = m.mul(x, generator_of[static_cast<size_t>(a)]);
        if (!m.in_semigroup[static_cast<size_t>(y)]) {
          m.in_semigroup[static_cast<size_t>(y)] = true;
          work.push(y);
        }
      }
    }
  }
  for (size_t i = 0; i < n; ++i)
    if (m.in_semigroup[i])
      m.semigroup.push_back(static_cast<int>(i));
  for (int s : m.semigroup)
    if (m.mul(s, s) == s)
      m.idempotents.push_back(s);

  return Morphism{std::make_shared<Monoid>(std::move(m)), dfa.alphabet};
}

int uniform_omega(const Monoid& m) {
  std::int64_t lcm_periods = 1;
  int max_index = 1;
  for (int s : m.semigroup) {
    auto shape = m.cycle_shape(s);
    lcm_periods = std::lcm<std::int64_t>(lcm_periods, shape.period);
    max_index = std::max(max_index, shape.index);
  }
  std::int64_t omega = lcm_periods * ((max_index + lcm_periods - 1) / lcm_periods);
  return static_cast<int>(omega);
}

std::string preimage_word(const Morphism& alpha, int x, bool nonempty) {
  const Monoid& m = alpha.m();
  if (x < 0 || x >= m.size())
    throw Error("preimage_word: element index out of range");

  std::vector<bool> visited(m.elements.size(), false);
  std::queue<std::pair<int, std::string>> work;
  if (!nonempty) {
    if (x == m.identity)
      return "";
    visited[static_cast<size_t>(m.identity)] = true;
    work.emplace(m.identity, "");
  } else {
    for (int a = 0; a < alpha.alphabet.size(); ++a) {
      int g = alpha.image(a);
      if (!visited[static_cast<size_t>(g)]) {
        visited[static_cast<size_t>(g)] = true;
        std::string w(1, alpha.alphabet.letter(a));
        if (g == x)
          return w;
        work.emplace(g, std::move(w));
      }
    }
  }
  while (!work.empty()) {
    auto [e, w] = work.front();
    work.pop();
    for (int a = 0; a < alpha.alphabet.size(); ++a) {
      int g = m.mul(e, alpha.image(a));
      if (!visited[static_cast<size_t>(g)]) {
        visited[static_cast<size_t>(g)] = true;
        std::string wa = w + alpha.alphabet.letter(a);
        if (g == x)
          return wa;
        work.emplace(g, std::move(wa));
      }
    }
  }
  throw Error(std::string("preimage_word: element ") + std::to_string(x) +
              " is not in the image of " + (nonempty ? "A+" : "A*"));
}

std::vector<int> accepting_elements(const Monoid& m, const Dfa& dfa) {
  std::vector<int> out;
  for (int i = 0; i < m.size(); ++i) {
    int target = m.elements[static_cast<size_t>(i)][static_cast<size_t>(dfa.initial)];
    if (dfa.accepting[static_cast<size_t>(target)])
      out.push_back(i);
  }
  return out;
}

}  // namespace fo2
