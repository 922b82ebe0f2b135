#pragma once

#include <stdexcept>
#include <string>

namespace fringelab {

// Base for every domain error raised by the library. Argument-contract
// violations use std::invalid_argument / std::out_of_range instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// tau * Phi'(tau) = Phi(tau) has no root inside the radius of convergence.
class NoCriticalPoint : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class InfeasibleSize : public Error {
 public:
  using Error::Error;
};

class RejectionBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class SizeTooLarge : public Error {
 public:
  using Error::Error;
};

class DegenerateWeights : public Error {
 public:
  using Error::Error;
};

}  // namespace fringelab
