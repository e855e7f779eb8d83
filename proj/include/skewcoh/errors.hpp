#pragma once

#include <stdexcept>
#include <string>

namespace skewcoh {

// Root of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NotPositiveError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Out-of-range or otherwise unusable user parameters.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Parameters are in range but the resulting operator is not a quantum state.
class InvalidState : public Error {
 public:
  using Error::Error;
};

// A cross-check between two independent routes failed; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace skewcoh
