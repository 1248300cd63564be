#pragma once

#include <stdexcept>
#include <string>

namespace k0bench {

// Raised when an operation's documented precondition does not hold.
// The CLI maps this to exit code 1.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a document or argument cannot be parsed. CLI exit code 2.
class MalformedInput : public std::runtime_error {
 public:
  explicit MalformedInput(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace k0bench
