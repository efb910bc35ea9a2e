#pragma once

#include <stdexcept>
#include <string>

namespace permcode {

/// Requested size exceeds a configured limit (enumeration cap, dense-matrix cap).
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside the domain of an operation.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed; this always indicates a bug.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline void ensure_invariant(bool condition, const std::string& what) {
  if (!condition) throw InvariantError(what);
}

}  // namespace permcode
