#pragma once

#include <stdexcept>
#include <string>

namespace oscdict {

// Exception hierarchy; the CLI maps each type onto a stable exit code.

/// Malformed or out-of-domain input (bad prime, bad index, wrong sizes).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Filesystem failure: missing file, unwritable path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stored data failed an integrity check (digest, header, counts).
class CorruptData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine met a state it cannot proceed from.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse recovery could not produce a representation.
class RecoveryError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace oscdict
