#include "fo2kit/extended.hpp"

#include "fo2kit/error.hpp"

namespace fo2 {

ExtAlphabet::ExtAlphabet(const Monoid& m, std::size_t max_letters)
    : idempotents_(m.idempotents), monoid_size_(m.size()) {
  idem_rank_.assign(static_cast<size_t>(m.size()), -1);
  for (size_t i = 0; i < idempotents_.size(); ++i)
    idem_rank_[static_cast<size_t>(idempotents_[i])] = static_cast<int>(i);

  const std::size_t guards = idempotents_.size() + 1;
  const std::size_t count = guards * guards * static_cast<size_t>(m.size());
  if (count > max_letters)
    throw BudgetError("extended alphabet would have " + std::to_string(count) +
                      " letters, above the cap of " + std::to_string(max_letters));
  letters_.reserve(count);
  for (std::size_t gl = 0; gl < guards; ++gl)
    for (std::size_t gr = 0; gr < guards; ++gr)
      for (int v = 0; v < m.size(); ++v)
        letters_.push_back(ExtLetter{guard_at(static_cast<int>(gl)), v,
                                     guard_at(static_cast<int>(gr))});
}

int ExtAlphabet::guard_rank(Guard g) const {
  if (g.is_box())
    return 0;
  int r = idem_rank_.at(static_cast<size_t>(g.element));
  if (r < 0)
    throw Error("guard element " + std::to_string(g.element) +
                " is not an idempotent of the semigroup");
  return r + 1;
}

Guard ExtAlphabet::guard_at(int rank) const {
  if (rank == 0)
    return Guard::box();
  return Guard::idem(idempotents_.at(static_cast<size_t>(rank - 1)));
}

int ExtAlphabet::index_of(const ExtLetter& b) const {
  int guards = guard_count();
  return (guard_rank(b.left) * guards + guard_rank(b.right)) * monoid_size_ +
         b.value;
}

std::string ExtAlphabet::name(const ExtLetter& b) const {
  auto guard_name = [](Guard g) {
    return g.is_box() ? std::string("#") : std::to_string(g.element);
  };
  return "[" + guard_name(b.left) + "|" + std::to_string(b.value) + "|" +
         guard_name(b.right) + "]";
}

int beta(const Monoid& m, const ExtLetter& b) {
  int v = b.value;
  if (!b.left.is_box())
    v = m.mul(b.left.element, v);
  if (!b.right.is_box())
    v = m.mul(v, b.right.element);
  return v;
}

int beta_word(const Monoid& m, const ExtWord& u) {
  int acc = m.identity;
  for (const ExtLetter& b : u)
    acc = m.mul(acc, beta(m, b));
  return acc;
}

bool is_pseudo_well_formed(const Monoid& m, const ExtWord& u) {
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    Guard r = u[i].right;
    if (r.is_box() || !(r == u[i + 1].left))
      return false;
    if (!m.in_semigroup[static_cast<size_t>(r.element)] ||
        !m.is_idempotent(r.element))
      return false;
  }
  return true;
}

bool is_well_formed(const Monoid& m, const ExtWord& u) {
  return !u.empty() && u.front().left.is_box() && u.back().right.is_box() &&
         is_pseudo_well_formed(m, u);
}

std::vector<ExtWord> enumerate_well_formed(const ExtAlphabet& B, const Monoid& m,
                                           int max_len) {
  std::vector<ExtWord> out;
  ExtWord current;
  // Extend a partial word whose last right guard is `open` (an idempotent)
  // until a box guard closes it.
  auto rec = [&](auto&& self, int remaining) -> void {
    Guard open = current.back().right;
    for (int v = 0; v < m.size(); ++v) {
      current.push_back(ExtLetter{open, v, Guard::box()});
      out.push_back(current);
      current.pop_back();
      if (remaining >= 2) {
        for (int e : m.idempotents) {
          current.push_back(ExtLetter{open, v, Guard::idem(e)});
          self(self, remaining - 1);
          current.pop_back();
        }
      }
    }
  };
  for (int v = 0; v < m.size(); ++v) {
    out.push_back(ExtWord{ExtLetter{Guard::box(), v, Guard::box()}});
    if (max_len >= 2) {
      for (int e : m.idempotents) {
        current = {ExtLetter{Guard::box(), v, Guard::idem(e)}};
        rec(rec, max_len - 1);
      }
    }
  }
  (void)B;
  return out;
}

std::vector<int> to_symbols(const ExtAlphabet& B, const ExtWord& u) {
  std::vector<int> out;
  out.reserve(u.size());
  for (const ExtLetter& b : u)
    out.push_back(B.index_of(b));
  return out;
}

}  // namespace fo2
