#pragma once

#include <stdexcept>
#include <string>

namespace puc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent knowledge-base input.
class LoadError : public Error {
 public:
  using Error::Error;
};

class UnknownDimension : public Error {
 public:
  explicit UnknownDimension(const std::string& name)
      : Error("unknown dimension '" + name + "'") {}
};

class UnknownUnit : public Error {
 public:
  explicit UnknownUnit(const std::string& name)
      : Error("unknown unit '" + name + "'") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonConvertibleUnit : public Error {
 public:
  using Error::Error;
};

// Bad arguments to an operation (empty column, misaligned vectors, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace puc
