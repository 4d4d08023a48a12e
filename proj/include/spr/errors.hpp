#ifndef SPR_ERRORS_HPP
#define SPR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spr {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroScalar : public Error {
 public:
  ZeroScalar() : Error("scaling factor must be nonzero") {}
};

/// Raised when restricting a matrix to Q finds entries with a nonzero radical part.
class NotRational : public Error {
 public:
  explicit NotRational(std::vector<std::pair<std::size_t, std::size_t>> positions);
  const std::vector<std::pair<std::size_t, std::size_t>>& positions() const noexcept {
    return positions_;
  }

 private:
  std::vector<std::pair<std::size_t, std::size_t>> positions_;
};

class StructuralError : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// The rounding scale N = 2^k ran past the schedule's cap without an accepted candidate.
class RoundingExhausted : public Error {
 public:
  using Error::Error;
};

class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

class AxiomViolation : public Error {
 public:
  using Error::Error;
};

class RepresentationMismatch : public Error {
 public:
  using Error::Error;
};

class InternalVerificationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace spr

#endif  // SPR_ERRORS_HPP
