#pragma once

#include <stdexcept>
#include <string>

namespace t5 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A closed-form denominator of the dependent-variable formulas vanished.
class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

class Ineq3Failed : public Error {
 public:
  using Error::Error;
};

class Ineq1Failed : public Error {
 public:
  using Error::Error;
};

class EpsilonTooLarge : public Error {
 public:
  using Error::Error;
};

class DuplicatePoints : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

/// Characteristic polynomial has a factor other than lambda, lambda+1 and one linear term.
class StructureViolation : public Error {
 public:
  using Error::Error;
};

class BadMu : public Error {
 public:
  using Error::Error;
};

class OutOfTrustRegion : public Error {
 public:
  using Error::Error;
};

class MaxIterExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace t5
