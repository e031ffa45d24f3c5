#pragma once

#include <stdexcept>
#include <string>

namespace qcomb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or index ranges do not fit the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A structure failed its defining equations.
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// The request is outside a documented capability bound (e.g. brute-force size).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on the input does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed interchange document. `where()` names the offending field or line.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(where) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace qcomb
