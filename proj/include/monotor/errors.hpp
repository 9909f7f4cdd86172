#pragma once

#include <stdexcept>
#include <string>

namespace monotor {

// Raised for inputs that are well-formed but mathematically unusable
// (dimension mismatch, infinite index, unsupported base ring, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class InfiniteIndex : public DomainError {
 public:
  InfiniteIndex() : DomainError("subgroup has infinite index") {}
  using DomainError::DomainError;
};

// Raised by the JSON front-end for malformed input documents.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace monotor
