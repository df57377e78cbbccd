#pragma once

#include <stdexcept>
#include <string>

namespace gausvol {

// Parameter or configuration problem; the CLI maps it to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A theorem hypothesis is violated (H >= 3/4, Hölder order too small, ...).
class HypothesisViolation : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class UnsupportedMethod : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Input does not cover the requested domain (e.g. a tabulated volatility
// that ends before the grid does).
class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Factorization failure or similar; exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gausvol
