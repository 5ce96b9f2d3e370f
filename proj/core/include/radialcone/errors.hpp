#ifndef RADIALCONE_ERRORS_HPP
#define RADIALCONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace radialcone {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Time step exceeds the Courant bound, or the Courant factor itself is invalid.
class CflViolation : public Error {
public:
  using Error::Error;
};

/// A field array or derived quantity contains NaN/inf.
class NonFiniteError : public Error {
public:
  using Error::Error;
};

/// Adaptive quadrature failed to converge within the depth limit.
class QuadratureError : public Error {
public:
  using Error::Error;
};

/// A diagnostic was requested outside the recorded time window or grid.
class RegionError : public Error {
public:
  using Error::Error;
};

/// Configuration file or parameter problem. Carries a source location when known.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const { return line_; }

private:
  int line_ = 0;
};

} // namespace radialcone

#endif
