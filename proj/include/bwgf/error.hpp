#pragma once

#include <stdexcept>
#include <string>

namespace bwgf {

// Base of every exception thrown by the library. The C API maps each subclass
// onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text/JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A configured size bound (vertices, states, truncation) was exceeded.
class BoundError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two routes that must agree did not (signals an implementation bug).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace bwgf
