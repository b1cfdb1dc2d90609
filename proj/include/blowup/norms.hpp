#pragma once

#include "blowup/errors.hpp"

#include <string>
#include <vector>

namespace blowup::norms {

/// Outcome of checking the admissibility bounds
///   0 < q1, q2 < (p-1)/2  and  0 < r1, r2 < (p-1)/(p+1).
/// All bounds are open. `violations` names every failed bound.
struct ExponentReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string message() const;
};

ExponentReport validate_exponents(double p, double q1, double q2, double r1, double r2);

/// Thrown by make_norm_table when the exponents are not admissible.
class ExponentViolation : public DomainError {
public:
  explicit ExponentViolation(ExponentReport report);
  const ExponentReport& report() const { return report_; }

private:
  ExponentReport report_;
};

/// ||U_p||_{L^q(-1,1)} (the norm itself, not its q-th power). Requires
/// p > 1 and 0 < q < (p-1)/2; throws DomainError otherwise.
double norm_U(double p, double q);

/// ||U_p'||_{L^r(-1,1)}. Requires p > 1 and 0 < r < (p-1)/(p+1).
double norm_U_prime(double p, double r);

/// Closed-form norms of the blow-up profile for one admissible exponent set.
///
/// Entries are plain norms ||.||_q and ||.||_r. The integral identities give
/// q-th and r-th powers; the roots are taken here because the reduced scalar
/// equation consumes plain norms.
struct NormTable {
  double p = 0, q1 = 0, q2 = 0, r1 = 0, r2 = 0;
  double n_q1 = 0, n_q2 = 0;  // ||U_p||_{q1}, ||U_p||_{q2}
  double m_r1 = 0, m_r2 = 0;  // ||U_p'||_{r1}, ||U_p'||_{r2}
  double mu_p = 0;
  double L_p = 0;
};

/// Throws ExponentViolation when validate_exponents fails.
NormTable make_norm_table(double p, double q1, double q2, double r1, double r2);

} // namespace blowup::norms
