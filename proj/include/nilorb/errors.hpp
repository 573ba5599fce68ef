#pragma once

#include <stdexcept>

namespace nilorb {

// A size or enumeration guard was exceeded.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nilorb
