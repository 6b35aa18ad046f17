#pragma once

#include <stdexcept>
#include <string>

namespace linf {

/// Malformed input: dimension mismatch, unknown identifier, wrong degree.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by cohomology() when the outgoing differential does not compose
/// to zero with the incoming one. `witness` names the offending basis element.
class NotAComplexError : public StructuralError {
 public:
  NotAComplexError(const std::string& what, std::string witness)
      : StructuralError(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

/// A requested construction exceeds the configured size budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identity that holds by theorem failed at runtime. Always a bug in this
/// library, never a property of the input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The request is outside what can be decided at this scope.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace linf
