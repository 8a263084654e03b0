#ifndef FO2KIT_ERROR_HPP
#define FO2KIT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fo2 {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (regex, formula s-expression, JSON).
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// A configured size cap was exceeded (monoid size, extended alphabet,
/// formula node budget).  Callers can distinguish a clean budget abort
/// from a wrong result.
class BudgetError : public Error {
public:
  explicit BudgetError(const std::string& what) : Error(what) {}
};

}  // namespace fo2

#endif
