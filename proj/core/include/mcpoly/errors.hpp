#pragma once

#include <stdexcept>
#include <string>

namespace mcpoly {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input violates a structural invariant (state, family, tree, source).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class EmptyRestrictedFamily : public Error {
 public:
  EmptyRestrictedFamily(std::size_t type, const std::string& what)
      : Error(what), type_(type) {}
  std::size_t type() const noexcept { return type_; }

 private:
  std::size_t type_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class IterationCapExceeded : public Error {
 public:
  using Error::Error;
};

class PruneDiverged : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class MalformedStream : public Error {
 public:
  using Error::Error;
};

}  // namespace mcpoly
