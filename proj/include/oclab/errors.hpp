#pragma once

#include <stdexcept>
#include <string>

namespace oclab {

// Precondition on an argument (non-prime p, odd weight, ...). CLI exit code 2.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Not enough q-coefficients to justify the requested output.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonUnitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NonDivisibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateDivisorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Slope beyond the range where the f_p valuation criterion is an equivalence.
class OutOfCriterionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A claim that must hold structurally failed (non-integer U-matrix entry,
// nonzero residual, ...). Never coerced. CLI exit code 3.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace oclab

namespace oclab {

// Report could not be written. CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oclab
