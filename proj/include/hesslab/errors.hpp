#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hesslab {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation was called with input outside its domain.
struct PreconditionError : Error {
  using Error::Error;
};

/// Malformed textual input; `position` is a 0-based character offset.
struct ParseError : PreconditionError {
  ParseError(const std::string& what, std::size_t pos)
      : PreconditionError("at position " + std::to_string(pos) + ": " + what), position(pos) {}
  std::size_t position;
};

/// The Krylov flag span(v, Av, ..., A^{i-1}v) stopped growing.
struct DegenerateFlagError : Error {
  using Error::Error;
};

/// Exact sign determination or enumeration exceeded its configured cap.
struct InconclusiveError : Error {
  using Error::Error;
};

}  // namespace hesslab
