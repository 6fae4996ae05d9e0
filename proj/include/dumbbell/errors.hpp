#pragma once

#include <stdexcept>
#include <string>

namespace dumbbell {

// Base for every failure the library reports. Callers that only care about
// "something went wrong" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations (bad L, negative count, wrong sign of lambda...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NonCommensurateGrid : public Error {
 public:
  NonCommensurateGrid(const std::string& what, int suggested_N)
      : Error(what), suggested_N(suggested_N) {}
  int suggested_N;
};

class NonFiniteSample : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class BracketingFailure : public Error {
 public:
  using Error::Error;
};

class ModulusOutOfRange : public Error {
 public:
  using Error::Error;
};

class QuadratureNearPole : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

class MaxIterExceeded : public Error {
 public:
  MaxIterExceeded(const std::string& what, double last_multiplier)
      : Error(what), last_multiplier(last_multiplier) {}
  double last_multiplier;  // Petviashvili M; NaN for Newton
};

class CollapseToZero : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

// Input file missing or unreadable.
class NoInput : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input file.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace dumbbell
