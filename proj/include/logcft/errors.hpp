#pragma once

#include <stdexcept>
#include <string>

namespace logcft {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range user input.
class InputError : public Error {
 public:
  using Error::Error;
};

// Value undefined for the given argument (zero, ramified place, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Working precision too small for the requested answer.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Character data that does not describe an abelian l-extension.
class InvalidExtension : public InputError {
 public:
  using InputError::InputError;
};

// A hypothesis of the called operation is violated by its arguments.
class HypothesisError : public DomainError {
 public:
  using DomainError::DomainError;
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

// An identity that must hold did not; either a bug or bad external data.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace logcft
