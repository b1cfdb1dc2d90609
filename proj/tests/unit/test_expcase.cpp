#include "blowup/errors.hpp"
#include "blowup/expcase.hpp"
#include "blowup/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace blowup;
using namespace blowup::expcase;
using std::numbers::pi;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_CASE("profile values") {
  const auto prof = make_exp_profile(pi * pi / 2.0);
  CHECK(std::abs(prof.mu) < 1e-15);
  CHECK(std::abs(eval_U_lambda(prof, 0.0)) < 1e-15);
  const auto one = make_exp_profile(1.0);
  CHECK(one.mu == std::log(pi * pi / 2.0));
  CHECK(rel(eval_U_lambda(one, 0.5), one.mu + std::log(2.0)) < 1e-15);
  CHECK(eval_U_lambda(one, 0.3) == eval_U_lambda(one, -0.3));
  CHECK_THROWS_AS(eval_U_lambda(one, 1.0), DomainError);
  CHECK_THROWS_AS(eval_U_lambda_prime(one, -1.0), DomainError);
  CHECK_THROWS_AS(make_exp_profile(0.0), DomainError);
}

TEST_CASE("profile solves U'' = lambda e^U") {
  for (double lambda : {0.1, 1.0, 10.0}) {
    const auto prof = make_exp_profile(lambda);
    const auto U = [&](double x) { return eval_U_lambda(prof, x); };
    const double second = oracles::second_difference(U, 0.3, 1e-4);
    CHECK(rel(second, lambda * std::exp(U(0.3))) < 1e-6);
    const double first = (U(0.3 + 1e-5) - U(0.3 - 1e-5)) / 2e-5;
    CHECK(rel(first, eval_U_lambda_prime(prof, 0.3)) < 1e-7);
  }
}

TEST_CASE("derivative") {
  const auto prof = make_exp_profile(3.0);
  CHECK(eval_U_lambda_prime(prof, 0.0) == 0.0);
  CHECK(eval_U_lambda_prime(prof, 0.4) == -eval_U_lambda_prime(prof, -0.4));
  CHECK(eval_U_lambda_prime(make_exp_profile(0.1), 0.4) == eval_U_lambda_prime(prof, 0.4));
  for (int i = 1; i <= 20; ++i) {
    const double x = 0.99 * i / 20.0;
    const double time_map =
        std::sqrt(2.0 * prof.lambda * (std::exp(eval_U_lambda(prof, x)) - std::exp(prof.mu)));
    CHECK(rel(eval_U_lambda_prime(prof, x), time_map) < 1e-10);
  }
}

TEST_CASE("derivative norm") {
  CHECK(rel(std::sqrt(exp_prime_norm(0.5)), 2.0 * std::sqrt(2.0 * pi)) < 1e-10);
  CHECK(rel(exp_prime_norm(0.5), 25.1327412287183459077) < 1e-13);
  for (double r : {0.2, 0.5, 0.8})
    for (double lambda : {0.1, 1.0, 10.0})
      CHECK(rel(oracles::exp_prime_norm_xspace(r, lambda), exp_prime_norm(r)) < 1e-7);
  double prev = 0;
  for (int k = 1; k <= 4; ++k) {
    const double r = 1.0 - std::pow(10.0, -k);
    const double power = std::pow(exp_prime_norm(r), r);
    CHECK(power > prev);
    prev = power;
  }
  CHECK_THROWS_AS(exp_prime_norm(1.0), DomainError);
  CHECK_THROWS_AS(exp_prime_norm(0.0), DomainError);
}

TEST_CASE("problem validation") {
  CHECK_NOTHROW(make_exp_problem(0.5, 0.5, "1+t", "2+t", 1.0));
  CHECK_THROWS_AS(make_exp_problem(0.5, 0.5, "1+s", "2+t", 1.0), DomainError);
  CHECK_THROWS_AS(make_exp_problem(1.0, 0.5, "1", "1", 1.0), DomainError);
  CHECK_THROWS_AS(make_exp_problem(0.5, 0.5, "1", "1", -1.0), DomainError);
  CHECK_THROWS_AS(make_exp_problem(0.5, 0.5, "1", "1", 1.0, {{"r1", 2.0}}), DomainError);
  CHECK_THROWS_AS(make_exp_problem(0.5, 0.5, "1+", "1", 1.0), expr::ParseError);
}

TEST_CASE("solution with A = B") {
  const auto grid = timemap::uniform_grid(51);
  const auto unit = solve_exp(make_exp_problem(0.5, 0.5, "1", "1", 1.0), grid);
  CHECK(unit.shift == 0.0);
  const auto prof1 = make_exp_profile(1.0);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(unit.sample.values[i] == doctest::Approx(eval_U_lambda(prof1, grid[i])).epsilon(1e-15));

  for (double lambda : {0.3, 7.0}) {
    const auto sol = solve_exp(make_exp_problem(0.4, 0.4, "2+t^2", "2+t^2", lambda), grid);
    CHECK(rel(sol.shift, std::log(lambda)) < 1e-14);
    CHECK(std::abs(sol.profile_shift) < 1e-15);
    // u = U_1 - log(lambda), which is U_lambda.
    const auto prof = make_exp_profile(lambda);
    for (std::size_t i = 0; i < grid.size(); ++i)
      CHECK(std::abs(sol.sample.values[i] - eval_U_lambda(prof, grid[i])) < 1e-12);
  }
}

TEST_CASE("generic coefficients") {
  const auto spec = make_exp_problem(0.5, 0.5, "1+t", "2+t", 1.0);
  const auto grid = timemap::uniform_grid(181, 0.1);
  const auto sol = solve_exp(spec, grid, 0.1);
  CHECK(exp_residual(spec, sol) <= 1e-7);
  CHECK(rel(sol.t1, exp_prime_norm(0.5)) < 1e-15);
  CHECK(rel(sol.A_value, 1.0 + sol.t1) < 1e-15);
  CHECK(rel(sol.B_value, 2.0 + sol.t2) < 1e-15);
  CHECK(rel(sol.shift, std::log(sol.B_value / sol.A_value)) < 1e-14);

  // Back-substitution recovers U_lambda.
  const auto prof = make_exp_profile(1.0);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(std::abs(sol.sample.values[i] + sol.profile_shift - eval_U_lambda(prof, grid[i])) < 1e-10);

  // Shifting does not change derivative norms.
  for (double r : {0.2, 0.5, 0.8}) {
    const double numeric = oracles::lq_norm_xspace(
        [&](double x) { return eval_U_lambda_prime(prof, x); }, r, 1.0, 1e-5);
    CHECK(rel(numeric, exp_prime_norm(r)) < 1e-10);
  }
  CHECK(eval_solution(sol, 0.25) == eval_solution(sol, -0.25));
}

TEST_CASE("mu_lambda") {
  double prev = INFINITY;
  for (double lambda : {0.1, 1.0, pi * pi / 2.0, 10.0}) {
    const double mu = make_exp_profile(lambda).mu;
    CHECK(mu < prev);
    prev = mu;
  }
  const auto sol = solve_exp(make_exp_problem(0.5, 0.5, "1", "1", 10.0), timemap::uniform_grid(101));
  CHECK(sol.sample.values[50] < 0.0);
  CHECK(sol.sample.values.front() > 0.0);
}

TEST_CASE("coefficient failures carry the norm values") {
  const auto spec = make_exp_problem(0.5, 0.5, "1-t", "1", 1.0);
  try {
    solve_exp(spec, timemap::uniform_grid(5));
    FAIL("expected EvalError");
  } catch (const expr::EvalError& e) {
    CHECK(std::string(e.what()).find("25.13") != std::string::npos);
  }
}
