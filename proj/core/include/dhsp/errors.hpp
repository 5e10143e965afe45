#pragma once

#include <stdexcept>
#include <string>

namespace dhsp {

// Raised when an oracle-scale or enumeration guard would be exceeded.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dhsp
