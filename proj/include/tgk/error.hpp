#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tgk {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text; `position` is the 0-based byte offset.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class ChartMismatch : public Error {
public:
  ChartMismatch() : Error("operands live on different charts") {}
};

/// A value violates one of its type invariants.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its contract.
class PreconditionError : public Error {
public:
  using Error::Error;
};

}  // namespace tgk
