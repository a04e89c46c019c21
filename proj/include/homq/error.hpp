#pragma once

#include <stdexcept>
#include <string>

namespace homq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands were built over different signatures.
class SignatureMismatch : public Error {
public:
  using Error::Error;
};

/// Malformed input: bad tuple, bad arity, bad file, bad parameter.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// An exhaustive procedure was asked to run past its configured size guard.
class GuardExceeded : public Error {
public:
  using Error::Error;
};

/// A homomorphism search ran out of its node budget. The count is unknown,
/// never approximated.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// A query strategy broke the runner contract (wrong signature, undefined on
/// a reachable transcript, did not halt within its step cap).
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// An internal invariant was violated.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace homq
