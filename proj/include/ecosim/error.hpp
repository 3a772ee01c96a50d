#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecosim {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A value violated an operation's preconditions (non-finite input,
/// unknown gear index, invalid state, mismatched cycle pair, ...).
class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& what) : Error(what) {}
};

/// A document (config or cycle file) could not be parsed or validated.
/// The message names the offending key and/or line.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Simulation state left the plausible envelope.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step_index)
      : Error(what), step_index_(step_index) {}

  std::size_t step_index() const { return step_index_; }

 private:
  std::size_t step_index_;
};

}  // namespace ecosim
