#pragma once

#include <stdexcept>
#include <string>

namespace nrange {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
public:
  using Error::Error;
};

/// Jacobi sweep budget exhausted before the off-diagonal mass fell below threshold.
class NoConvergence : public Error {
public:
  using Error::Error;
};

/// Eigenvalue outside the domain of a scalar function, beyond roundoff clamping.
class DomainViolation : public Error {
public:
  using Error::Error;
};

class UnknownChain : public Error {
public:
  using Error::Error;
};

/// Inputs do not match a chain's input signature (arity, dimensions, parameters).
class SignatureMismatch : public Error {
public:
  using Error::Error;
};

class PositivityViolation : public Error {
public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

class NotUnitVector : public Error {
public:
  using Error::Error;
};

/// Malformed matrix/vector document or invalid configuration value.
class InvalidInput : public Error {
public:
  using Error::Error;
};

} // namespace nrange
