#pragma once

#include <stdexcept>
#include <string>

namespace fockpsi {

// Base of every error raised by the library. Domain errors that stem from bad
// caller input derive from InputError so front-ends can map them to usage
// failures; everything else is a numerical failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

class TailNotConvergent : public Error {
 public:
  using Error::Error;
};

class QuadratureBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class TruncationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public InputError {
 public:
  using InputError::InputError;
};

class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class SingularMatrix : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace fockpsi
