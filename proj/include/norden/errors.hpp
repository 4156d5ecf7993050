#pragma once

#include <stdexcept>
#include <string>

namespace norden {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Misuse of a value's structure: mismatched variable lists, wrong variance,
/// out-of-range slot, malformed index.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// Text input that cannot be parsed; carries a byte position when known.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what, std::size_t position = npos)
      : Error(what), position_(position) {}
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// A frame specification that fails one of its validity conditions.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Metric whose entries are not parameter-free rationals.
class UnsupportedMetricError : public Error {
public:
  using Error::Error;
};

/// Metric with vanishing determinant.
class DegenerateMetricError : public Error {
public:
  using Error::Error;
};

/// Operation not available in the requested dimension.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// Two routes that must agree disagreed: signals a convention bug or
/// inconsistent inputs.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

/// A connection argument violates a precondition (e.g. the difference of the
/// two inputs is not symmetric, so one of them carries torsion).
class ConnectionError : public Error {
public:
  using Error::Error;
};

/// Closed-form construction applied to a manifold outside its class.
class ClassMismatchError : public Error {
public:
  using Error::Error;
};

}  // namespace norden
