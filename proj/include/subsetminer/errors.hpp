#pragma once

#include <stdexcept>
#include <string>

namespace subsetminer {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input content (catalog files, source files, archives).
struct ParseError : Error {
  using Error::Error;
};

// Catalog entries that make token lookup ambiguous.
struct ConflictError : Error {
  using Error::Error;
};

// Invalid arguments or configuration values.
struct ArgError : Error {
  using Error::Error;
};

// Filesystem and archive I/O failures.
struct IoError : Error {
  using Error::Error;
};

// enumerate_space would exceed its node budget; no partial count is returned.
struct BudgetError : Error {
  using Error::Error;
};

}  // namespace subsetminer
