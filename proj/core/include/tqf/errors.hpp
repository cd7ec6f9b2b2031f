#pragma once

#include <stdexcept>
#include <string>

namespace tqf {

// Input outside the mathematical domain of an operation (bad discriminant,
// non-totally-positive element, excluded congruence class, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input or intermediate value outside the supported 64-bit envelope.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Two independent computations that must agree did not.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tqf
