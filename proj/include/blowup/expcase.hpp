#pragma once

#include "blowup/exprdsl.hpp"
#include "blowup/timemap.hpp"

#include <vector>

namespace blowup::expcase {

/// Closed-form blow-up profile for U'' = lambda e^U on (-1, 1):
///   U_lambda(x) = log(pi^2 / (2 lambda)) - 2 log cos(pi x / 2).
struct ExpProfile {
  double lambda = 1.0;
  double mu = 0.0;  // U_lambda(0) = log(pi^2 / (2 lambda))
};

/// Throws DomainError unless lambda > 0.
ExpProfile make_exp_profile(double lambda);

double eval_U_lambda(const ExpProfile& profile, double x);

/// pi tan(pi x / 2); does not depend on lambda.
double eval_U_lambda_prime(const ExpProfile& profile, double x);

/// ||U_lambda'||_{L^r(-1,1)} = (2 pi^{r-1} B((1-r)/2, (r+1)/2))^{1/r}, 0 < r < 1.
double exp_prime_norm(double r);

/// A(||u'||_r1) u'' = lambda B(||u'||_r2) e^u with u -> inf at +-1.
/// A and B are one-variable expressions in t (the derivative norm).
struct ExpProblemSpec {
  double r1 = 0.5;
  double r2 = 0.5;
  expr::CoeffExpr A;
  expr::CoeffExpr B;
  double lambda = 1.0;
  /// User parameters; r1 and r2 are bound automatically.
  expr::ParamBinding params;
};

/// Throws DomainError when r1, r2 are outside (0, 1), lambda <= 0, or A or B
/// mentions s.
ExpProblemSpec make_exp_problem(double r1, double r2, std::string_view A_src,
                                std::string_view B_src, double lambda,
                                expr::ParamBinding params = {});

void validate(const ExpProblemSpec& spec);

/// The unique solution. With U_1 the lambda = 1 profile (U_1'' = e^{U_1}),
///   u = U_1 - shift,  shift = log(lambda B(||U'||_r2) / A(||U'||_r1)),
/// which equals U_lambda - log(B / A).
struct ExpSolution {
  timemap::ProfileSample sample;
  double shift = 0.0;
  /// log(B / A): offset from U_lambda.
  double profile_shift = 0.0;
  double t1 = 0.0;  // ||u'||_r1
  double t2 = 0.0;  // ||u'||_r2
  double A_value = 0.0;
  double B_value = 0.0;
};

/// Coefficient evaluation failures are rethrown as expr::EvalError with the
/// norm arguments in the message.
ExpSolution solve_exp(const ExpProblemSpec& spec, const std::vector<double>& grid,
                      double delta = timemap::kDefaultDelta);

/// Evaluate the solution at one point.
double eval_solution(const ExpSolution& sol, double x);

/// max over the sample of |A u'' - lambda B e^u| / |A u''| with the exact u''.
double exp_residual(const ExpProblemSpec& spec, const ExpSolution& sol);

} // namespace blowup::expcase
