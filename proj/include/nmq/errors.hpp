#pragma once

#include <stdexcept>
#include <string>

namespace nmq {

/// Parameter or argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A density matrix that left the X pattern; indicates a solver defect.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values, integrator breakdown and similar numerical failures.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scenario configuration; `key()` names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace nmq
