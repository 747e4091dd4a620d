#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nsas {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field or grid dimensions do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A numeric argument lies outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The physical state left its admissible set (vacuum proximity, NaN input).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Time stepping produced non-finite values.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::int64_t step)
      : Error(what), step_(step) {}
  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

/// A background state does not give a positive spectral gap.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// Too few or invalid samples for a fit.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Two time series do not share timestamps.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Configuration file is malformed or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nsas
