#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pspec {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateValue : Error {
  using Error::Error;
};
struct ArityMismatch : Error {
  using Error::Error;
};
struct TooShort : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct EmptyWindow : Error {
  using Error::Error;
};
struct NotDominated : Error {
  using Error::Error;
};
struct DegenerateOperator : Error {
  using Error::Error;
};
struct EmptyGraph : Error {
  using Error::Error;
};
struct NotStronglyConnected : Error {
  using Error::Error;
};
struct NotOdd : Error {
  using Error::Error;
};
struct OutOfRange : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

}  // namespace pspec
