#pragma once

#include <stdexcept>
#include <string>

namespace cpsblotto {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed scenario or input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input violates a model invariant (bad topology, parameters, value vectors).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The equilibrium solver found no partition-consistent solution, or an
/// analytic special case was requested outside its regime.
class RegimeError : public Error {
 public:
  using Error::Error;
};

}  // namespace cpsblotto
