#pragma once

#include <stdexcept>
#include <string>

namespace cptforge {

enum class ErrorKind {
  kDimensionMismatch,
  kNotSurjective,
  kNotFullSupport,
  kEmptyMultiset,
  kZeroRow,
  kZeroValidity,
  kBoundaryPoint,
  kInvalidArgument,
  kUnsupportedDimension,
  kInput,
};

const char* to_string(ErrorKind kind);

// Single exception type for every precondition violation in the library.
// `kind()` lets callers and tests tell the failure modes apart without
// parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cptforge
