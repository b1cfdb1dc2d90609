#include "blowup/expcase.hpp"

#include "blowup/errors.hpp"
#include "blowup/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace blowup::expcase {

namespace {

using std::numbers::pi;

void require_interior(double x) {
  if (std::isnan(x) || std::abs(x) >= 1.0) {
    throw DomainError("U_lambda is defined on |x| < 1, got x = " + std::to_string(x));
  }
}

// U_1''(x) = pi^2 / (2 cos^2(pi x / 2)).
double second_derivative(double x) {
  const double c = std::cos(0.5 * pi * x);
  return 0.5 * pi * pi / (c * c);
}

} // namespace

ExpProfile make_exp_profile(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be positive and finite");
  }
  return {lambda, std::log(pi * pi / (2.0 * lambda))};
}

double eval_U_lambda(const ExpProfile& profile, double x) {
  require_interior(x);
  return profile.mu - 2.0 * std::log(std::cos(0.5 * pi * x));
}

double eval_U_lambda_prime(const ExpProfile&, double x) {
  require_interior(x);
  return pi * std::tan(0.5 * pi * x);
}

double exp_prime_norm(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("||U_lambda'||_r is finite only for 0 < r < 1");
  const double log_power = std::log(2.0) + (r - 1.0) * std::log(pi) +
                           specfun::log_beta({0.5 * (1.0 - r), 0.5 * (r + 1.0)});
  return std::exp(log_power / r);
}

void validate(const ExpProblemSpec& spec) {
  if (!(spec.r1 > 0.0 && spec.r1 < 1.0) || !(spec.r2 > 0.0 && spec.r2 < 1.0)) {
    throw DomainError("exponential case needs 0 < r1, r2 < 1");
  }
  if (!(spec.lambda > 0.0) || !std::isfinite(spec.lambda)) {
    throw DomainError("lambda must be positive and finite");
  }
  if (spec.A.mentions("s") || spec.B.mentions("s")) {
    throw DomainError("exponential-case coefficients depend only on t = ||u'||_r; 's' is not allowed");
  }
  for (const char* name : {"r1", "r2"}) {
    if (spec.params.count(name)) {
      throw DomainError(std::string("parameter '") + name + "' is bound automatically");
    }
  }
}

ExpProblemSpec make_exp_problem(double r1, double r2, std::string_view A_src,
                                std::string_view B_src, double lambda,
                                expr::ParamBinding params) {
  ExpProblemSpec spec{r1, r2, expr::parse(A_src), expr::parse(B_src), lambda, std::move(params)};
  validate(spec);
  return spec;
}

namespace {
expr::ParamBinding bound_params(const ExpProblemSpec& spec) {
  auto params = spec.params;
  params["r1"] = spec.r1;
  params["r2"] = spec.r2;
  return params;
}
} // namespace

ExpSolution solve_exp(const ExpProblemSpec& spec, const std::vector<double>& grid, double delta) {
  validate(spec);
  ExpSolution sol;
  sol.t1 = exp_prime_norm(spec.r1);
  sol.t2 = exp_prime_norm(spec.r2);
  const auto params = bound_params(spec);
  auto coefficient = [&](const expr::CoeffExpr& e, double t, const char* which) {
    double v;
    try {
      v = expr::eval(e, 0.0, t, params);
    } catch (const expr::EvalError& err) {
      throw expr::EvalError(std::string(which) + "(" + std::to_string(t) + ") failed: " + err.what(),
                            err.subexpression());
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw expr::EvalError(std::string(which) + "(" + std::to_string(t) + ") = " +
                                std::to_string(v) + " is not positive",
                            e.print());
    }
    return v;
  };
  sol.A_value = coefficient(spec.A, sol.t1, "A");
  sol.B_value = coefficient(spec.B, sol.t2, "B");
  sol.profile_shift = std::log(sol.B_value / sol.A_value);
  sol.shift = std::log(spec.lambda) + sol.profile_shift;

  const ExpProfile base = make_exp_profile(1.0);
  sol.sample.delta = delta;
  sol.sample.grid = grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    if (std::abs(x) > 1.0 - delta) throw DomainError("grid point outside (-1+delta, 1-delta)");
    if (i > 0 && !(x > grid[i - 1])) throw DomainError("grid must be strictly increasing");
    sol.sample.values.push_back(eval_U_lambda(base, x) - sol.shift);
    sol.sample.derivs.push_back(eval_U_lambda_prime(base, x));
  }
  return sol;
}

double eval_solution(const ExpSolution& sol, double x) {
  return eval_U_lambda(make_exp_profile(1.0), x) - sol.shift;
}

double exp_residual(const ExpProblemSpec& spec, const ExpSolution& sol) {
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.sample.grid.size(); ++i) {
    const double lhs = sol.A_value * second_derivative(sol.sample.grid[i]);
    const double rhs = spec.lambda * sol.B_value * std::exp(sol.sample.values[i]);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
  }
  return worst;
}

} // namespace blowup::expcase
