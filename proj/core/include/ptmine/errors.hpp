#pragma once

#include <stdexcept>
#include <string>

namespace ptmine {

// Error taxonomy shared by the whole library. The CLI maps each class to a
// distinct exit code; see tools/ptmine_main.cpp and README.md.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Misuse of an operation: empty operand lists, unknown attribute names,
// contradictory options. Maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A file or directory that should exist does not, or cannot be opened.
// Maps to exit code 3.
class IoError : public Error {
 public:
  using Error::Error;
};

// Structurally malformed input: ragged rows, non-power-of-two bit lengths,
// operand length mismatches. Maps to exit code 4.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a declared contract: unknown categorical
// value, schema/table mismatch, invalid schema. Maps to exit code 4.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A table with zero data rows where at least one is required.
class EmptyInputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A support or confidence threshold outside (0, 1], or unparseable.
// Maps to exit code 5.
class ThresholdError : public Error {
 public:
  using Error::Error;
};

// A named dataset failed its manifest check (row count, arity).
// Maps to exit code 6.
class DatasetError : public Error {
 public:
  using Error::Error;
};

// A serialized tree that does not conform to the container format:
// bad magic, unsupported version, illegal header fields. Maps to exit code 7.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A conforming container whose payload is damaged: truncated body,
// undecodable node tag, trailing bytes. Maps to exit code 7.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

// A decodable payload whose redundant fields disagree: stored counts that do
// not match recomputed counts, non-canonical node shapes. Maps to exit code 7.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// A broken internal invariant. Always a bug, never a user error.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptmine
