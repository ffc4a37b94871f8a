#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace primrec {

// Common base so callers can catch anything from this library in one clause.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A dense (positional) result would exceed the configured bit-length guard.
// The quantity exists and is exact; it just cannot be written out in binary.
struct ValueTooLarge : Error {
  using Error::Error;
};

struct ZeroInput : Error {
  using Error::Error;
};

struct ArityMismatch : Error {
  std::string path;  // breadcrumb into the term, e.g. "root.hs[1].g"
  ArityMismatch(const std::string& where, const std::string& what)
      : Error(what + " at " + where), path(where) {}
};

struct UnresolvedRef : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct MuDiverged : Error {
  using Error::Error;
};

struct EmptyArgs : Error {
  using Error::Error;
};

struct NonTermination : Error {
  using Error::Error;
};

struct NoOutputNumeral : Error {
  using Error::Error;
};

struct MalformedConfig : Error {
  using Error::Error;
};

struct MalformedMachine : Error {
  using Error::Error;
};

struct NotPrimitiveRecursive : Error {
  using Error::Error;
};

struct ParseError : Error {
  std::size_t position;
  ParseError(std::size_t pos, const std::string& what)
      : Error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

struct TooManyVariables : Error {
  using Error::Error;
};

struct TooManyNodes : Error {
  using Error::Error;
};

struct MalformedGraph : Error {
  using Error::Error;
};

struct WitnessRefuted : Error {
  using Error::Error;
};

struct FitFailed : Error {
  using Error::Error;
};

}  // namespace primrec
