#pragma once

#include <stdexcept>
#include <string>
#include <vector>
#include <cstdint>

namespace ddim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched lengths, out-of-range indices and other caller mistakes.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class DivisibilityError : public Error {
 public:
  using Error::Error;
};

/// Raised when a polynomial in K is asked for a leader, initial or separant.
class NoLeaderError : public Error {
 public:
  using Error::Error;
};

class NonlinearError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The defining polynomials generate the unit ideal.
class InconsistentSystemError : public Error {
 public:
  using Error::Error;
};

class InterpolationError : public Error {
 public:
  InterpolationError(const std::string& what, std::vector<std::int64_t> point)
      : Error(what), point_(std::move(point)) {}
  const std::vector<std::int64_t>& point() const { return point_; }

 private:
  std::vector<std::int64_t> point_;
};

class ThresholdError : public Error {
 public:
  using Error::Error;
};

class OracleError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant was violated. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ddim
