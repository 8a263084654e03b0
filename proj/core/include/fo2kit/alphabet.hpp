#ifndef FO2KIT_ALPHABET_HPP
#define FO2KIT_ALPHABET_HPP

#include <string>
#include <string_view>
#include <vector>

namespace fo2 {

/// A finite, ordered alphabet of single-character symbols.  The declared
/// order is fixed and drives every deterministic tie-break downstream
/// (state numbering, monoid enumeration, witness selection).
class Alphabet {
public:
  Alphabet() = default;
  /// Throws Error on empty or duplicated letters.
  explicit Alphabet(std::string_view letters);

  int size() const noexcept { return static_cast<int>(letters_.size()); }
  char letter(int i) const { return letters_.at(static_cast<size_t>(i)); }
  const std::string& letters() const noexcept { return letters_; }

  bool contains(char c) const noexcept { return index_of(c) >= 0; }
  /// Index of c in declared order, or -1.
  int index_of(char c) const noexcept;
  /// Like index_of but throws Error when c is not declared.
  int index_checked(char c) const;

  bool operator==(const Alphabet& other) const = default;

private:
  std::string letters_;
};

/// All words of length <= max_len in length-then-lexicographic order
/// (lexicographic in declared alphabet order), starting with the empty
/// word, each exactly once.
std::vector<std::string> enumerate_words(const Alphabet& alphabet, int max_len);

}  // namespace fo2

#endif
