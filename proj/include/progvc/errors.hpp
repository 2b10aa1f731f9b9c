#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace progvc {

/// Raised when an argument violates an operation's precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a configured search or enumeration cap would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the 64-bit fast paths on signed overflow.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// VC search ran into its subset-size cap before certifying the answer.
class VcCapExceeded : public ResourceError {
 public:
  VcCapExceeded(std::size_t lower_bound, std::size_t cap)
      : ResourceError("vc search cap " + std::to_string(cap) +
                      " exceeded; shattered sets of size " +
                      std::to_string(lower_bound) + " exist"),
        lower_bound_(lower_bound) {}

  std::size_t lower_bound() const noexcept { return lower_bound_; }

 private:
  std::size_t lower_bound_;
};

}  // namespace progvc
