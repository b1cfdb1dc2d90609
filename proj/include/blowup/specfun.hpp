#pragma once

namespace blowup::specfun {

/// Arguments of the Euler Beta function. Both must be strictly positive.
struct BetaArgs {
  double x;
  double y;
};

/// ln Gamma(x) for x > 0.
///
/// Lanczos approximation (g = 7, 9 terms) for x >= 0.5 and the recurrence
/// Gamma(x) = Gamma(x + 1) / x below that. Relative error is at most a few
/// ulp on [1e-3, 1e3]; absolute error is below 1e-14 near the zeros at 1
/// and 2. Throws DomainError for x <= 0 or non-finite x.
double log_gamma(double x);

/// Euler Beta function B(x, y), evaluated in log space so that arguments
/// close to zero (where Gamma is huge) do not overflow.
double beta(BetaArgs args);

/// ln B(x, y).
double log_beta(BetaArgs args);

} // namespace blowup::specfun
