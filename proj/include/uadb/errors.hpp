#ifndef UADB_ERRORS_HPP
#define UADB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uadb {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: unknown relation, schema mismatch, bad predicate, ...
struct InvalidArgument : Error {
  using Error::Error;
};

// Parse failure in CSV/JSON/query/condition text. Carries a location hint.
struct ParseError : Error {
  using Error::Error;
};

// A stated invariant was violated (sandwich c <= d, malformed C column,
// negative counts, ...). These indicate bugs or corrupt data, never
// ordinary bad usage.
struct InvariantViolation : Error {
  using Error::Error;
};

// Natural-number arithmetic left the 64-bit range.
struct OverflowError : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

// An enumeration guard tripped (too many worlds / tuples for the oracle).
struct BudgetExceeded : Error {
  using Error::Error;
};

}  // namespace uadb

#endif
