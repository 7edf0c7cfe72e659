#pragma once

#include <stdexcept>
#include <string>

namespace padic {

// Raised when a result cannot be determined at the stored precision, or when
// an exact int64 coefficient would overflow.
struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Invalid input: violated precondition, wrong prime, degenerate form, ...
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace padic
