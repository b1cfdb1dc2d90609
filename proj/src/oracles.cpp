#include "blowup/oracles.hpp"

#include "blowup/errors.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace blowup::oracles {

namespace {

using boost::math::quadrature::tanh_sinh;

constexpr double kTol = 1e-13;

template <class F>
double finite(F f, double a, double b) {
  static thread_local tanh_sinh<double> integrator(15);
  return integrator.integrate(f, a, b, kTol);
}

// int_a^inf s^gamma (1 - (mu/s)^{p+1})^e ds for gamma < -1. With
// s = a v^{-1/alpha}, alpha = -gamma - 1, the power part cancels and the
// integral becomes a^{-alpha} / alpha int_0^1 (1 - (mu/s)^{p+1})^e dv.
double algebraic_tail(double p, double mu, double a, double gamma, double e) {
  const double alpha = -gamma - 1.0;
  auto f = [&](double v) {
    if (v <= 0.0) return 1.0;
    const double s = a * std::pow(v, -1.0 / alpha);
    return std::pow(-std::expm1((p + 1.0) * std::log(mu / s)), e);
  };
  return std::pow(a, -alpha) / alpha * finite(f, 0.0, 1.0);
}

// ((1 + w^2)^{p+1} - 1) / w^2, finite down to w = 0.
double rise_ratio(double p, double w) {
  if (w < 1e-8) return p + 1.0;
  return std::expm1((p + 1.0) * std::log1p(w * w)) / (w * w);
}

double head_integrand(double p, double w) { return 2.0 / std::sqrt(rise_ratio(p, w)); }

} // namespace

double beta_quadrature(double x, double y) {
  if (!(x > 0.0 && y > 0.0)) throw DomainError("beta_quadrature needs x, y > 0");
  // [0, 1/2]: t = v^{1/x}, t^{x-1} dt = dv / x.
  auto left = [&](double v) { return std::pow(1.0 - std::pow(v, 1.0 / x), y - 1.0) / x; };
  // [1/2, 1]: 1 - t = v^{1/y}.
  auto right = [&](double v) { return std::pow(1.0 - std::pow(v, 1.0 / y), x - 1.0) / y; };
  return finite(left, 0.0, std::pow(0.5, x)) + finite(right, 0.0, std::pow(0.5, y));
}

double length_quadrature(double p) {
  // [1, 2] in w (t = 1 + w^2), then the algebraic tail.
  const double head = finite([p](double w) { return head_integrand(p, w); }, 0.0, 1.0);
  const double tail = algebraic_tail(p, 1.0, 2.0, -0.5 * (p + 1.0), -0.5);
  return head + tail;
}

double mu_quadrature(double p) {
  return std::pow(std::sqrt(0.5 * (p + 1.0)) * length_quadrature(p), 2.0 / (p - 1.0));
}

double F_tanh_sinh(double p, double y) {
  if (y < 1.0) throw DomainError("F needs y >= 1");
  if (y == 1.0) return 0.0;
  return finite([p](double w) { return head_integrand(p, w); }, 0.0, std::sqrt(y - 1.0));
}

double F_midpoint(double p, double y) {
  if (y < 1.0) throw DomainError("F needs y >= 1");
  const double b = std::sqrt(y - 1.0);
  if (b == 0.0) return 0.0;
  auto midpoint = [&](int n) {
    const double h = b / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += head_integrand(p, (i + 0.5) * h);
    return sum * h;
  };
  // Romberg table on the h^2 error expansion of the midpoint rule.
  constexpr int levels = 9;
  std::array<std::array<double, levels>, levels> table{};
  for (int k = 0; k < levels; ++k) {
    table[k][0] = midpoint(8 << k);
    double factor = 4.0;
    for (int j = 1; j <= k; ++j) {
      table[k][j] = table[k][j - 1] + (table[k][j - 1] - table[k - 1][j - 1]) / (factor - 1.0);
      factor *= 4.0;
    }
  }
  return table[levels - 1][levels - 1];
}

double F_inverse_bisection(double p, double z) {
  if (z < 0.0) throw DomainError("F_inverse needs z >= 0");
  if (z == 0.0) return 1.0;
  double lo = 1.0;
  double hi = 2.0;
  while (F_tanh_sinh(p, hi) < z) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw RangeError("F_inverse_bisection: z too close to L_p");
  }
  for (int i = 0; i < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (F_tanh_sinh(p, mid) < z) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

OdeState rk_profile(double p, double mu, double x, double tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  State state{mu, 0.0};
  auto system = [p](const State& y, State& dydx, double) {
    dydx[0] = y[1];
    dydx[1] = std::pow(y[0], p);
  };
  const double sign = x < 0.0 ? -1.0 : 1.0;
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
  odeint::integrate_adaptive(stepper, system, state, 0.0, std::abs(x), 1e-4);
  return {state[0], sign * state[1]};
}

double norm_U_sspace(double p, double q) {
  const double mu = mu_quadrature(p);
  const double c = 2.0 / (p + 1.0);
  const double mu_pow = std::pow(mu, p + 1.0);
  // [mu, 2 mu] with s = mu (1 + w^2), ds = 2 mu w dw.
  auto head = [&](double w) {
    const double s = mu * (1.0 + w * w);
    return std::pow(s, q) * 2.0 * mu / std::sqrt(c * mu_pow * rise_ratio(p, w));
  };
  const double tail = algebraic_tail(p, mu, 2.0 * mu, q - 0.5 * (p + 1.0), -0.5) / std::sqrt(c);
  const double power = 2.0 * (finite(head, 0.0, 1.0) + tail);
  return std::pow(power, 1.0 / q);
}

double norm_U_prime_sspace(double p, double r) {
  const double mu = mu_quadrature(p);
  const double mu_pow = std::pow(mu, p + 1.0);
  const double e = 0.5 * (r - 1.0);
  auto head = [&](double w) {
    return std::pow(mu_pow * rise_ratio(p, w), e) * std::pow(w, r) * 2.0 * mu;
  };
  const double integral =
      finite(head, 0.0, 1.0) + algebraic_tail(p, mu, 2.0 * mu, (p + 1.0) * e, e);
  const double power = 2.0 * std::pow(2.0 / (p + 1.0), e) * integral;
  return std::pow(power, 1.0 / r);
}

double norm_U_prime_tspace(double p, double r) {
  // prefactor is (2/(p+1))^{(r-1)/2}; the s = mu t substitution leaves mu^{(p+1)e+1}.
  const double mu = mu_quadrature(p);
  const double e = 0.5 * (r - 1.0);
  auto head = [&](double w) { return std::pow(rise_ratio(p, w), e) * std::pow(w, r) * 2.0; };
  const double integral = finite(head, 0.0, 1.0) + algebraic_tail(p, 1.0, 2.0, (p + 1.0) * e, e);
  const double power = 2.0 * std::pow(2.0 / (p + 1.0), e) *
                       std::pow(mu, 0.5 * (p + 1.0) * (r - 1.0) + 1.0) * integral;
  return std::pow(power, 1.0 / r);
}

double lq_norm_xspace(const std::function<double(double)>& f, double q, double beta,
                      double delta) {
  if (!(q * beta < 1.0)) throw DomainError("tail exponent q*beta must be below 1");
  const double end = 1.0 - delta;
  const double body = finite([&](double x) { return std::pow(std::abs(f(x)), q); }, 0.0, end);
  // f ~ C (1 - x)^{-beta} beyond 1 - delta.
  const double C = std::abs(f(end)) * std::pow(delta, beta);
  const double tail = std::pow(C, q) * std::pow(delta, 1.0 - q * beta) / (1.0 - q * beta);
  return std::pow(2.0 * (body + tail), 1.0 / q);
}

double norm_U_xspace(const timemap::Profile& profile, double q, double delta) {
  const double p = profile.p();
  return lq_norm_xspace([&](double x) { return profile.U(x); }, q, 2.0 / (p - 1.0), delta);
}

double norm_U_prime_xspace(const timemap::Profile& profile, double r, double delta) {
  const double p = profile.p();
  return lq_norm_xspace([&](double x) { return profile.U_prime(x); }, r,
                        (p + 1.0) / (p - 1.0), delta);
}

double exp_prime_norm_xspace(double r, double lambda) {
  using std::numbers::pi;
  const double mu = std::log(pi * pi / (2.0 * lambda));
  const double scale = std::sqrt(2.0 * lambda * std::exp(mu));
  // e^U - e^mu = e^mu (1 - c^2) / c^2 with c = cos(pi x / 2). tanh-sinh passes
  // the distance to the nearer endpoint, which keeps c accurate next to x = 1.
  auto integrand = [&](double x, double xc) {
    const double dist_to_one = (x > 0.5) ? xc : 1.0 - x;
    const double c = std::sin(0.5 * pi * dist_to_one);
    const double slope = scale * std::sqrt(1.0 - c * c) / c;
    return std::pow(slope, r);
  };
  static thread_local tanh_sinh<double> integrator(15);
  const double half = integrator.integrate(integrand, 0.0, 1.0, kTol);
  return std::pow(2.0 * half, 1.0 / r);
}

double second_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

} // namespace blowup::oracles
