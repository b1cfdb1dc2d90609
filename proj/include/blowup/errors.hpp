#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Argument inside the domain but outside what can be represented or
/// resolved numerically (e.g. too close to a blow-up point).
class RangeError : public std::range_error {
public:
  using std::range_error::range_error;
};

} // namespace blowup
