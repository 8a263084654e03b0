#include "fo2kit/alphabet.hpp"

#include <algorithm>

#include "fo2kit/error.hpp"

namespace fo2 {

Alphabet::Alphabet(std::string_view letters) : letters_(letters) {
  if (letters_.empty())
    throw Error("alphabet must not be empty");
  for (size_t i = 0; i < letters_.size(); ++i)
    for (size_t j = i + 1; j < letters_.size(); ++j)
      if (letters_[i] == letters_[j])
        throw Error(std::string("duplicate letter '") + letters_[i] +
                    "' in alphabet");
}

int Alphabet::index_of(char c) const noexcept {
  auto pos = letters_.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

int Alphabet::index_checked(char c) const {
  int i = index_of(c);
  if (i < 0)
    throw Error(std::string("letter '") + c + "' is not in the alphabet \"" +
                letters_ + "\"");
  return i;
}

std::vector<std::string> enumerate_words(const Alphabet& alphabet, int max_len) {
  if (max_len < 0)
    throw Error("enumerate_words: max_len must be >= 0");
  std::vector<std::string> out;
  out.emplace_back();
  size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t level_end = out.size();
    for (size_t i = level_begin; i < level_end; ++i)
      for (int a = 0; a < alphabet.size(); ++a)
        out.push_back(out[i] + alphabet.letter(a));
    level_begin = level_end;
  }
  return out;
}

}  // namespace fo2
