#pragma once

#include <stdexcept>
#include <string>

namespace patind {

// Base class so callers can catch anything raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input-side failures (bad data, bad parameters).
class TieError : public Error {
 public:
  using Error::Error;
};

class DegenerateSample : public Error {
 public:
  using Error::Error;
};

class DiagonalInput : public Error {
 public:
  using Error::Error;
};

class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

class UnsupportedSampler : public Error {
 public:
  using Error::Error;
};

class InputFormatError : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

// Numerical failures.
class RootBracketFailure : public Error {
 public:
  using Error::Error;
};

class TruncationUnreachable : public Error {
 public:
  using Error::Error;
};

class QuadratureNonconvergent : public Error {
 public:
  using Error::Error;
};

class UnsupportedShift : public Error {
 public:
  using Error::Error;
};

}  // namespace patind
