#pragma once

// Oracle suite behind `blowup verify`: every check compares a library value
// with an independent computation and records measured vs allowed error.

#include "blowup/norms.hpp"

#include <string>
#include <vector>

namespace blowup::verify {

struct Check {
  std::string name;
  double measured = 0;
  double allowed = 0;
  bool pass = false;
};

struct Options {
  std::vector<double> ps{2.0, 3.0};
  /// Relative fault injected into the closed-form norms before comparison.
  double perturb_norms = 0.0;
  /// Restrict to the checks of one scenario (cor1..cor4).
  std::string scenario;
  /// Run only the large-lambda cor4 trend checks.
  bool asymptotics = false;
};

struct Report {
  std::vector<Check> checks;
  bool pass() const;
};

/// Throws DomainError on an unknown scenario or when `asymptotics` is combined
/// with a scenario other than cor4.
Report run(const Options& opts);

/// Exponent set used for the cor4 trend checks: p = 9, q = 2, r = 0.4.
norms::NormTable asymptotic_table();

/// Numeric cor4 roots at one lambda next to the two-term predictions.
struct AsymptoticSample {
  double lambda = 0;
  double s1 = 0, s2 = 0;            // numeric; NaN when not exactly two roots
  double s1_pred = 0, s2_pred = 0;  // predictions
  double s1_rel_error = 0;          // |s1 - s1_pred| / s1
  double s2_ratio = 0;              // (s2 - log lambda) / ((p-1) log log lambda)
};

AsymptoticSample cor4_sample(const norms::NormTable& table, double lambda);

} // namespace blowup::verify
