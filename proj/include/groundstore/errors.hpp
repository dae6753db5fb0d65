#pragma once

#include <stdexcept>
#include <string>

namespace gs {

// Base for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Two worlds (or an injection endpoint and a world) that were required to
// coincide do not. Distinct from the pcm's "undefined" outcome, which is a
// value, not an error.
struct WorldMismatch : Error {
  explicit WorldMismatch(const std::string& what) : Error(what) {}
};

// Ill-typed value, term or formula.
struct TypeError : Error {
  explicit TypeError(const std::string& what) : Error(what) {}
};

// An operation that only exists for first-order data was applied to a
// function value / arrow type (comparison, enumeration, canonicalization).
struct HigherOrderError : Error {
  explicit HigherOrderError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  ParseError(const std::string& what, int line, int col)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line), col(col) {}
  int line, col;
};

// Breach of an internal invariant; indicates a bug, not bad input.
struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace gs
