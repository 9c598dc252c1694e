#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace proxproj {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative factorization (SVD) did not converge.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// A Cholesky factorization met a non-positive pivot.
class NotSpdError : public Error {
 public:
  using Error::Error;
};

/// A zero pivot was met during tridiagonal elimination.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Operand dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Root bracket produced non-finite values.
class IllConditionedError : public Error {
 public:
  using Error::Error;
};

/// Root solve hit its iteration cap; carries the best estimate found.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best)
      : Error(what), best_(best) {}
  double best() const noexcept { return best_; }

 private:
  double best_;
};

/// The constraint set violates full-rank / image conditions.
class IllPosedError : public Error {
 public:
  using Error::Error;
};

/// Invalid solver or baseline configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or truncated file.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace proxproj
