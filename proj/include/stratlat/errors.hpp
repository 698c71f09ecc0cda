#pragma once

#include <stdexcept>
#include <string>

namespace stratlat {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Order relation has a nontrivial cycle, so antisymmetry fails.
struct CycleError : Error {
  using Error::Error;
};

// Poset is fine but some pair lacks a least upper or greatest lower bound,
// or a global bottom/top is missing.
struct NotALatticeError : Error {
  using Error::Error;
};

struct NotMonotoneError : Error {
  using Error::Error;
};

// Map fails one of the projection laws (upper o lower = id, lower o upper <= id).
struct NotProjectionError : Error {
  using Error::Error;
};

// Supplied composite maps disagree with the composition of the consecutive ones.
struct NotCoherentError : Error {
  using Error::Error;
};

// Operation requires the axioms A1-A6 and the input breaks one of them.
struct NotAModelError : Error {
  using Error::Error;
};

// Dual restriction x|^alpha does not exist at the requested point.
struct CorestrictError : Error {
  using Error::Error;
};

struct NotWeaklyMonotoneError : Error {
  using Error::Error;
};

// Caller violated a documented precondition (bad subset, non-chain input, ...).
struct PreconditionError : Error {
  using Error::Error;
};

// Input exceeds the documented desk-scale bounds of an enumeration.
struct BudgetError : Error {
  using Error::Error;
};

// Materialization would exceed the documented element/depth caps.
struct StateSpaceError : Error {
  using Error::Error;
};

// A verified theorem-level postcondition failed: an implementation bug.
struct InternalError : Error {
  using Error::Error;
};

// Representation isomorphism verification failed (implementation bug).
struct IsoFailureError : InternalError {
  using InternalError::InternalError;
};

// Malformed program text; carries 1-based line/column of the offending token.
struct ParseError : Error {
  ParseError(const std::string& what, int line_, int col_)
      : Error(what), line(line_), col(col_) {}
  int line;
  int col;
};

// Malformed JSON payload (missing keys, unknown labels, bad shapes).
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace stratlat
