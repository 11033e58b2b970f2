#pragma once

#include <stdexcept>
#include <string>

namespace secluded {

/// A violated precondition or malformed input. The CLI maps this to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A postcondition the library itself is responsible for did not hold.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace secluded
