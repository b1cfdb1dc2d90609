#pragma once

// Independent numerical oracles. Nothing here calls the closed forms it is
// used to check: quadrature is Boost tanh-sinh (not the in-house
// Gauss-Kronrod), the ODE oracle is Boost.Odeint, and mu_p / L_p are
// recomputed by quadrature rather than through the Beta function.

#include "blowup/timemap.hpp"

#include <functional>

namespace blowup::oracles {

/// int_0^1 t^{x-1} (1-t)^{y-1} dt with t = v^{1/x} / 1 - v^{1/y} substitutions
/// on each half, integrated by tanh-sinh.
double beta_quadrature(double x, double y);

/// L_p = int_1^inf dt / sqrt(t^{p+1} - 1) by quadrature.
double length_quadrature(double p);

/// mu_p from the quadrature value of L_p.
double mu_quadrature(double p);

/// F_p(y) by tanh-sinh in w (s = 1 + w^2).
double F_tanh_sinh(double p, double y);

/// F_p(y) by composite midpoint sums in w with Richardson extrapolation.
double F_midpoint(double p, double y);

/// F_p^{-1}(z) by plain bisection on F_tanh_sinh.
double F_inverse_bisection(double p, double z);

struct OdeState {
  double u;
  double du;
};

/// Integrates U'' = U^p from (mu, 0) at x = 0 to x with an adaptive
/// Runge-Kutta-Fehlberg 7(8) stepper.
OdeState rk_profile(double p, double mu, double x, double tol = 1e-14);

/// ||U_p||_q via 2 int_mu^inf s^q / sqrt(2/(p+1) (s^{p+1} - mu^{p+1})) ds.
double norm_U_sspace(double p, double q);

/// ||U_p'||_r via 2 (2/(p+1))^{(r-1)/2} int_mu^inf (s^{p+1} - mu^{p+1})^{(r-1)/2} ds.
double norm_U_prime_sspace(double p, double r);

/// ||U_p'||_r via 2 (2/(p+1))^{(r-1)/2} mu^{(p+1)(r-1)/2+1} int_1^inf (t^{p+1}-1)^{(r-1)/2} dt.
double norm_U_prime_tspace(double p, double r);

/// 2 int_0^{1-delta} |f|^q dx plus the tail of C (1-x)^{-beta} with C fitted
/// at 1 - delta. For even / odd f on (-1, 1) this is the L^q norm (returned as
/// the norm, not its q-th power).
double lq_norm_xspace(const std::function<double(double)>& f, double q, double beta,
                      double delta);

/// ||U_p||_q and ||U_p'||_r in x-space through the profile evaluator.
double norm_U_xspace(const timemap::Profile& profile, double q, double delta = 1e-3);
double norm_U_prime_xspace(const timemap::Profile& profile, double r, double delta = 1e-3);

/// ||U_lambda'||_r for the exponential profile, integrating the time-map form
/// sqrt(2 lambda (e^{U_lambda} - e^{mu_lambda})) over (0, 1) in x.
double exp_prime_norm_xspace(double r, double lambda);

/// Centred second difference.
double second_difference(const std::function<double(double)>& f, double x, double h);

} // namespace blowup::oracles
