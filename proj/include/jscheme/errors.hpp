#pragma once

#include <stdexcept>
#include <string>

namespace jscheme {

// Raised when a vertex, matrix or enumeration budget would be exceeded.
class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jscheme
