#pragma once

#include <stdexcept>
#include <string>

namespace dialect {

// Base type for every error thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Patterns from universes of different widths were mixed.
struct WidthMismatchError : Error {
  using Error::Error;
};

// An element or message index is out of range for its container.
struct IndexError : Error {
  using Error::Error;
};

// A set argument does not satisfy a structural requirement (for example a
// domain that is not upward closed).
struct DomainError : Error {
  using Error::Error;
};

// A precondition on function arguments was violated.
struct ContractError : Error {
  using Error::Error;
};

// Two objects from incompatible sources were compared.
struct ComparisonError : Error {
  using Error::Error;
};

// The input sets do not cover the required space.
struct CoverError : Error {
  using Error::Error;
};

// An instance exceeds the guard bounds of an exhaustive operation.
struct SizeError : Error {
  using Error::Error;
};

// Malformed input file or document.
struct ParseError : Error {
  using Error::Error;
};

// Invalid harness configuration.
struct ConfigError : Error {
  using Error::Error;
};

// A domain object failed validation (bad weight, marginal, duplicate name...).
struct ValidationError : Error {
  using Error::Error;
};

// Filesystem or process-level failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace dialect
