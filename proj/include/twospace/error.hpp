#pragma once

#include <stdexcept>
#include <string>

namespace twospace {

// Base error for all library failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated precondition or domain rule (zero denominator, null event, ...).
struct ValidationError : Error {
  using Error::Error;
};

// Malformed input document (bad JSON, bad rational syntax, unknown field).
struct ParseError : Error {
  using Error::Error;
};

} // namespace twospace
