#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

// Malformed input or configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An intermediate result left its numerically valid domain (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcorr
