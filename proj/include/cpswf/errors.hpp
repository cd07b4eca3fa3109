#pragma once

#include <stdexcept>
#include <string>

namespace cpswf {

// argument outside the mathematical domain of an operation
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// misuse of the API: mismatched rules, bases, indices
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// a theorem/proposition hypothesis does not hold for the given input
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// quadrature rule too coarse for the requested expansion
class ResolutionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// iterative numerics that failed to converge
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cpswf
