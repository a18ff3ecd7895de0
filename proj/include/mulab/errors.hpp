#pragma once

#include <stdexcept>
#include <string>

namespace mulab {

// Thrown when a requested computation would exceed the configured memory
// budget. The CLI maps this to exit code 2 (computation refused).
class BudgetError : public std::runtime_error {
  public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mulab
