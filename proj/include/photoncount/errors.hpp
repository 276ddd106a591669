#pragma once

#include <stdexcept>

namespace pcs {

// Invalid run description (bad config keys, parameter out of range).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state does not fit in the requested Fock truncation.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical tolerance could not be met (integrator failure etc.).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A statistical acceptance check failed.
class StatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Conditioning on a zero-probability event (e.g. a count from vacuum).
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pcs
