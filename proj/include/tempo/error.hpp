#ifndef TEMPO_ERROR_HPP
#define TEMPO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tempo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid thresholds, mismatched bitmap lengths, conflicting run options.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Unparseable files, non-uniform grids, missing or unmappable values.
class InputError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// A series with zero entropy cannot normalise mutual information.
class DegenerateSeriesError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The NMI threshold cannot be derived (logarithm base of 1).
class DerivationError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The brute-force miner refuses inputs outside its size guard.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tempo

#endif  // TEMPO_ERROR_HPP
