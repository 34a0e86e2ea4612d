#pragma once

#include <stdexcept>
#include <string>

namespace cubecore {

/// Input violates a structural axiom (pocset, median graph, automorphism, schema).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size or search budget was exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  std::size_t estimate() const noexcept { return estimate_; }

 private:
  std::size_t estimate_;
};

/// Raised by file loaders; carries a JSON-pointer style location.
class SchemaError : public ValidationError {
 public:
  SchemaError(const std::string& location, const std::string& message)
      : ValidationError(location + ": " + message), location_(location) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace cubecore
