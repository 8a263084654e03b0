#ifndef FO2KIT_MONOID_HPP
#define FO2KIT_MONOID_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fo2kit/alphabet.hpp"
#include "fo2kit/automata.hpp"

namespace fo2 {

/// Transition monoid of a DFA: all transformations of the state set that
/// are images of words, with a full multiplication table.
///
/// Elements are enumerated breadth-first from the identity, multiplying
/// on the right by the letter images in alphabet order, so indices are
/// reproducible.  Index 0 is always the identity transformation.
struct Monoid {
  int domain = 0;                          // number of DFA states acted upon
  std::vector<std::vector<int>> elements;  // index -> transformation
  std::vector<int> table;                  // flattened size x size
  int identity = 0;
  std::vector<int> generator_of;           // letter index -> element index
  std::vector<int> semigroup;              // image of A+, ascending
  std::vector<bool> in_semigroup;          // by element index
  std::vector<int> idempotents;            // idempotents of the semigroup,
                                           // in element-enumeration order

  int size() const noexcept { return static_cast<int>(elements.size()); }

  int mul(int x, int y) const {
    return table[static_cast<size_t>(x) * elements.size() + static_cast<size_t>(y)];
  }

  bool is_idempotent(int x) const { return mul(x, x) == x; }

  /// x^n for n >= 1 (square-and-multiply over the table).
  int pow(int x, std::int64_t n) const;

  /// The unique idempotent in the cyclic subsemigroup generated by x.
  int idempotent_power(int x) const;

  /// Index and period of the cyclic subsemigroup generated by x:
  /// x, x^2, ..., x^{index+period-1} are distinct and x^{index+period} = x^{index}.
  struct CycleShape {
    int index;
    int period;
  };
  CycleShape cycle_shape(int x) const;
};

/// Letter-to-element map generating the monoid; extends to words
/// multiplicatively with the empty word mapping to the identity.
struct Morphism {
  std::shared_ptr<const Monoid> monoid;
  Alphabet alphabet;

  const Monoid& m() const { return *monoid; }
  int image(int letter_index) const {
    return monoid->generator_of[static_cast<size_t>(letter_index)];
  }
  /// Image of a word; throws on letters outside the alphabet.
  int eval(std::string_view w) const;
};

/// Computes the transition monoid of a DFA together with the recognizing
/// morphism.  The DFA should be minimal with total transitions for the
/// result to be the syntactic monoid.  Throws BudgetError when the
/// element count exceeds max_size.
Morphism transition_monoid(const Dfa& dfa, std::size_t max_size = 4096);

/// The smallest n >= 1 such that x^n is idempotent for every x in the
/// semigroup: the least common multiple of all element periods, raised
/// to the first multiple that is >= every element's cycle index.
int uniform_omega(const Monoid& m);

/// A shortest word mapping to x (ties broken lexicographically in
/// alphabet order); non-empty when nonempty is set.  Throws Error when x
/// is not in the requested image.
std::string preimage_word(const Morphism& alpha, int x, bool nonempty);

/// F = { m | applying m to the initial state yields an accepting state }.
/// With alpha = transition_monoid(dfa), w is accepted iff alpha(w) in F.
std::vector<int> accepting_elements(const Monoid& m, const Dfa& dfa);

}  // namespace fo2

#endif
