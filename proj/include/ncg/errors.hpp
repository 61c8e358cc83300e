#pragma once

#include <stdexcept>
#include <string>

namespace ncg {

// Bad input: rejected preconditions, malformed files, inconsistent arguments.
// The CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A violated internal invariant; indicates a bug, not bad input.
// The CLI maps this to exit code 2.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ncg
