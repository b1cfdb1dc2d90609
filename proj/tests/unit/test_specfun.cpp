#include "blowup/errors.hpp"
#include "blowup/oracles.hpp"
#include "blowup/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace blowup;
using specfun::beta;
using specfun::log_gamma;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_CASE("log_gamma at exact points") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(log_gamma(1.0)) < 1e-14);
  CHECK(std::abs(log_gamma(2.0)) < 1e-14);
  CHECK(rel(log_gamma(0.5), 0.5 * std::log(std::numbers::pi)) < 1e-13);
  CHECK(rel(log_gamma(5.0), std::log(24.0)) < 1e-13);
}

TEST_CASE("log_gamma matches the C library over [1e-3, 1e3]") {
  double worst = 0;
  for (double x = 1e-3; x <= 1e3; x *= 1.07) {
    const double ref = std::lgamma(x);
    // Near the zeros of log-Gamma at 1 and 2 compare absolutely.
    const double err = std::abs(ref) < 1e-2 ? std::abs(log_gamma(x) - ref) : rel(log_gamma(x), ref);
    worst = std::max(worst, err);
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("log_gamma rejects bad input") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("beta closed values") {
  CHECK(rel(beta({1.0, 1.0}), 1.0) < 1e-13);
  CHECK(rel(beta({0.5, 0.5}), std::numbers::pi) < 1e-13);
  CHECK(rel(beta({0.25, 0.75}), std::numbers::pi * std::numbers::sqrt2) < 1e-12);
  CHECK(rel(beta({0.25, 0.75}), 4.4428829381583662) < 1e-12);
}

TEST_CASE("beta symmetry and recurrence") {
  for (double x : {0.05, 0.3, 1.0, 2.7, 9.5})
    for (double y : {0.07, 0.5, 1.3, 4.0, 10.0}) {
      CHECK(rel(beta({x, y}), beta({y, x})) < 1e-15);
      CHECK(rel(beta({x, y}), beta({x + 1.0, y}) * (x + y) / x) < 1e-12);
    }
}

TEST_CASE("beta agrees with quadrature of the defining integral") {
  double worst = 0;
  for (double x : {0.05, 0.2, 0.8, 1.0, 3.3, 10.0})
    for (double y : {0.05, 0.5, 1.7, 6.0, 10.0})
      worst = std::max(worst, rel(beta({x, y}), oracles::beta_quadrature(x, y)));
  CHECK(worst < 1e-9);
}

TEST_CASE("beta survives arguments near zero") {
  // Gamma overflows at tiny arguments; the log-space route must not.
  const double b = beta({1e-300, 0.5});
  CHECK(std::isfinite(b));
  CHECK(rel(b, 1e300) < 1e-10);
}

TEST_CASE("beta rejects non-positive arguments") {
  CHECK_THROWS_AS(beta({0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(beta({1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(specfun::log_beta({-1.0, 1.0}), DomainError);
}
