#pragma once

#include <stdexcept>
#include <string>

namespace peierls {

/// Input outside the region where a quantity is defined (elliptic parameter,
/// convergence bound of the energy density, chain indices).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative numerical routine failed to converge or produced non-finite output.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace peierls
