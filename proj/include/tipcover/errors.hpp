#pragma once

#include <stdexcept>
#include <string>

namespace tipcover {

// Bad input data or out-of-range parameters. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A selection constraint that no candidate can satisfy. CLI exit code 3.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tipcover
