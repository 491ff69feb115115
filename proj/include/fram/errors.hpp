#pragma once

#include <stdexcept>
#include <string>

namespace fram {

// Base for every error the library raises on bad input or exhausted budgets.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented precondition (sign, symmetry, permutation...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Problem is too large for an exhaustive routine.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Value does not fit the exponent range of a floating-point format.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Problem has no information to work with (all-zero data).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace fram
