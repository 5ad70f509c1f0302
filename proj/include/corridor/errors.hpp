#pragma once

#include <stdexcept>
#include <string>

namespace corridor {

// Invalid input: bad scenario field, malformed file, violated precondition.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation outside the domain of a channel formula (co-located point,
// undefined SINR).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite objective or gradient during optimization.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation not defined for the requested objective kind.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace corridor
