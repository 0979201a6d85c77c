#pragma once

#include <stdexcept>
#include <string>

namespace irlssvm {

enum class ErrorKind {
  InvalidArgument,
  Data,
  Solver,
  Io,
  Invariant,
};

/// Base exception for everything the library throws. `kind()` drives the
/// status code the C API hands back.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::InvalidArgument, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, double smallest_pivot)
      : Error(ErrorKind::Solver, what), smallest_pivot_(smallest_pivot) {}

  double smallest_pivot() const noexcept { return smallest_pivot_; }

 private:
  double smallest_pivot_;
};

}  // namespace irlssvm
