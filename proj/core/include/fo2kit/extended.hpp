#ifndef FO2KIT_EXTENDED_HPP
#define FO2KIT_EXTENDED_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fo2kit/monoid.hpp"

namespace fo2 {

/// Either the boundary marker (box) or an idempotent element of the
/// semigroup.
struct Guard {
  int element = -1;  // -1 encodes box

  static Guard box() { return Guard{-1}; }
  static Guard idem(int element) { return Guard{element}; }

  bool is_box() const { return element < 0; }
  bool operator==(const Guard&) const = default;
};

/// Letter of the extended alphabet: (left guard, monoid element, right
/// guard).  The full product set is allowed; well-formedness constrains
/// words, not letters.
struct ExtLetter {
  Guard left;
  int value = 0;
  Guard right;

  bool operator==(const ExtLetter&) const = default;
};

using ExtWord = std::vector<ExtLetter>;

/// The extended alphabet in canonical enumeration order together with
/// index lookups.  Guards are ordered box first, then idempotents in
/// idempotent-enumeration order; letters are ordered by (left guard,
/// value, right guard).
class ExtAlphabet {
public:
  /// Throws BudgetError if the letter count would exceed max_letters.
  ExtAlphabet(const Monoid& m, std::size_t max_letters = 5000);

  int size() const { return static_cast<int>(letters_.size()); }
  const ExtLetter& letter(int i) const { return letters_[static_cast<size_t>(i)]; }
  const std::vector<ExtLetter>& letters() const { return letters_; }

  int index_of(const ExtLetter& b) const;
  /// Number of admissible guards (idempotents + box).
  int guard_count() const { return static_cast<int>(idempotents_.size()) + 1; }
  /// Guard enumeration index: 0 for box, 1.. for idempotents.
  int guard_rank(Guard g) const;
  Guard guard_at(int rank) const;

  /// Textual form [g1|m|g2] with '#' for box and canonical element
  /// indices for idempotents.
  std::string name(const ExtLetter& b) const;
  std::string name(int index) const { return name(letter(index)); }

private:
  std::vector<ExtLetter> letters_;
  std::vector<int> idempotents_;       // copy of monoid idempotent order
  std::vector<int> idem_rank_;         // element -> rank+... -1 if none
  int monoid_size_;
};

/// beta of a single letter: the guarded product (left * value * right,
/// with box guards skipped).
int beta(const Monoid& m, const ExtLetter& b);
/// beta of a word: multiplicative fold, empty word mapping to identity.
int beta_word(const Monoid& m, const ExtWord& u);

/// Empty, or every adjacent guard pair matches on an idempotent:
/// right(u[i]) == left(u[i+1]) and both are idempotents of S.
bool is_pseudo_well_formed(const Monoid& m, const ExtWord& u);
/// Non-empty, pseudo well-formed, and the outer guards are box.
bool is_well_formed(const Monoid& m, const ExtWord& u);

/// All well-formed words of length <= max_len over the extended
/// alphabet, in deterministic order (letters in canonical order).
std::vector<ExtWord> enumerate_well_formed(const ExtAlphabet& B, const Monoid& m,
                                           int max_len);

/// Symbol-index view of an extended word for formula evaluation.
std::vector<int> to_symbols(const ExtAlphabet& B, const ExtWord& u);

}  // namespace fo2

#endif
