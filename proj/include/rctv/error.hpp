#pragma once

#include <stdexcept>
#include <string>

namespace rctv {

// Raised for anything a caller could have prevented: malformed input files,
// out-of-range parameters, threshold sets that contradict each other.
// The CLI maps this type to exit code 2; every other escaping exception is
// treated as an internal failure and maps to exit code 3.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rctv
