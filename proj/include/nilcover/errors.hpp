#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilcover {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible ambient dimensions or shapes.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// A structural invariant that should hold by construction was observed
/// broken (bracket closure, ideal property, dimension increments, ...).
struct InvariantViolation : Error {
  using Error::Error;
};

/// Malformed input: JSON that fails schema or value validation.
struct ParseError : Error {
  using Error::Error;
};

/// A set operation was refused because it would exceed the configured
/// resource caps. Carries the cardinalities computed before refusal so
/// callers can report partial progress.
struct CapExceeded : Error {
  std::size_t projected = 0;
  std::size_t cap = 0;
  std::string cap_kind;  // "elements" or "pairs"
  std::vector<std::size_t> partial_cardinalities;

  CapExceeded(std::string msg, std::string kind, std::size_t projected_,
              std::size_t cap_, std::vector<std::size_t> partial = {})
      : Error(std::move(msg)),
        projected(projected_),
        cap(cap_),
        cap_kind(std::move(kind)),
        partial_cardinalities(std::move(partial)) {}
};

/// CLI-level misuse: bad flags, missing files.
struct UsageError : Error {
  using Error::Error;
};

}  // namespace nilcover
