#pragma once

#include <stdexcept>
#include <string>

namespace slecoset {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (bad rational string, non-coprime p,q,
/// critical level, wrong spins, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A result would leave the grade window of a truncated module.
class TruncationError : public Error {
public:
  using Error::Error;
};

/// Non-finite value in a numerical integration.
class NumericalError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace slecoset
