#pragma once

#include <stdexcept>
#include <string>

namespace wpmep {

/// Input refers to something outside the object's domain (unknown label,
/// mismatched shapes, a subset that is not a subset of the ground set).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Construction-time validation failure (non-transitive relation, cover
/// cycle, non-prime modulus, malformed instance field).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive enumeration would exceed its configured cap. Enumerations
/// never truncate silently; they throw this instead.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-side contract was violated, e.g. decomposing a map that is not an
/// isometry. Carries a human-readable witness.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A closed-form predicate does not cover the requested instance.
class PredicateUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wpmep
