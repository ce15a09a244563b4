#pragma once

#include <stdexcept>
#include <string>

namespace rumor {

// Invalid argument to a model or statistics routine.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sample too small or too uniform for an estimator to be defined.
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Branching ratio at or above one: expected cascade size diverges.
class SupercriticalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rumor
