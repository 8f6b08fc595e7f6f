#pragma once

#include <stdexcept>
#include <string>

namespace srgg {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A requested mean degree (or similar target) cannot be reached.
class InfeasibleTarget : public Error {
 public:
  using Error::Error;
};

// Operation is undefined for the boundary mode of its input.
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

// Connection function violates an analytic assumption (bounded support, ...).
class AssumptionViolated : public Error {
 public:
  using Error::Error;
};

class UnsupportedFamily : public Error {
 public:
  using Error::Error;
};

class UnsupportedRegime : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

}  // namespace srgg
