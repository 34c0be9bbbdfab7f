#pragma once

#include <stdexcept>
#include <string>

namespace respkit {

// Base class for all respkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller passed a structurally invalid argument (bad size, bad name, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The inputs were well-formed but the requested quantity is undefined or
// not computable for them (degenerate distributions, divergent quadrature).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (scenario JSON, event CSV, sweep CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace respkit
