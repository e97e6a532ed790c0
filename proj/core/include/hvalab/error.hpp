#pragma once

#include <stdexcept>
#include <string>

namespace hvalab {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Malformed rational literal or other scalar text.
class ScalarFormatError : public Error {
 public:
  using Error::Error;
};

class InvalidScalarError : public Error {
 public:
  using Error::Error;
};

/// The operation has no meaning for this machine kind (e.g. status of a GFA).
class UnsupportedKindError : public Error {
 public:
  using Error::Error;
};

/// A transformation pass was given a machine outside its precondition.
class UnsupportedPassError : public Error {
 public:
  using Error::Error;
};

/// A symbol outside the machine's alphabet.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

/// Two machines (or a machine and a system) disagree on their interface.
class InterfaceError : public Error {
 public:
  using Error::Error;
};

class BuilderError : public Error {
 public:
  using Error::Error;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// A machine violated an invariant that validation should have rejected.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Machine or system file could not be parsed; `where` names the field or position.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace hvalab
