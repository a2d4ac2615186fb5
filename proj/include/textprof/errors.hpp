#pragma once

#include <stdexcept>
#include <string>

namespace textprof {

// Malformed input that fails structural parsing (bad JSON line, wrong
// column count in a TSV, unknown enum token).  Messages include the
// offending line number where one is available.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally valid input that violates a documented invariant
// (duplicate ids, orphaned hierarchy nodes, priors that do not sum to 1).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A lookup of a name that is not part of the structure being queried
// (unknown hierarchy node, unknown attribute).
class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing or contradictory run configuration: required context that was
// not supplied, unsupported parameter combinations.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The supplied data cannot support the requested computation even though
// it is well formed: e.g. a training split with no positive examples.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Contradictory training data: the same example appears with both labels,
// so no consistent concept description exists.
class NoiseError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace textprof
