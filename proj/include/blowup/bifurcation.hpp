#pragma once

#include "blowup/exprdsl.hpp"
#include "blowup/norms.hpp"
#include "blowup/timemap.hpp"

#include <array>
#include <string>
#include <vector>

namespace blowup::bifurcation {

/// One instance of the nonlocal problem
///   A(||u||_q1, ||u'||_r1) u'' = lambda B(||u||_q2, ||u'||_r2) u^p,  u -> inf at +-1.
/// lambda is supplied per query.
struct ProblemSpec {
  double p = 3.0;
  double q1 = 0.5, q2 = 0.5, r1 = 0.25, r2 = 0.25;
  expr::CoeffExpr A;
  expr::CoeffExpr B;
  /// User parameters (a, b, ...). p, q1, q2, r1, r2 are bound automatically.
  expr::ParamBinding params;
};

/// Builds a spec from coefficient text. Throws ParseError on bad text,
/// ExponentViolation on inadmissible exponents and DomainError when a user
/// parameter shadows one of the automatically bound names.
ProblemSpec make_problem(double p, double q1, double q2, double r1, double r2,
                         std::string_view A_src, std::string_view B_src,
                         expr::ParamBinding params = {});

/// params plus the automatically bound exponents.
expr::ParamBinding effective_params(const ProblemSpec& spec);

/// (s1, s2, t1, t2): candidate values of (||u||_q1, ||u||_q2, ||u'||_r1, ||u'||_r2).
struct Quadruple {
  double s1 = 0, s2 = 0, t1 = 0, t2 = 0;
};

enum class RootKind { Transversal, Tangential, WindowEdge };
std::string_view to_string(RootKind kind);

struct Root {
  double s = 0;
  RootKind kind = RootKind::Transversal;
  /// |g(s) - target| / target.
  double residual = 0;
  Quadruple quadruple;
};

/// Scan interval for s = ||u||_q1.
struct Window {
  double s_min;
  double s_max;
};

/// (1e-6, 1e6) * ||U_p||_q1.
Window default_window(const norms::NormTable& table);

struct SolveOptions {
  int grid_points = 4096;
  int count_cap = 64;
  /// Relative |h| / target below which a local extremum counts as a double root.
  double tangential_tol = 1e-8;
  /// Relative s-accuracy of transversal roots. Refinement runs to a few ulp
  /// by default: on steep stretches of g a 1e-12 step in s is already a
  /// 1e-9 error in the equation.
  double root_tol = 1e-15;
};

struct SolveResult {
  double lambda = 0;
  /// lambda ||U_p||_q1^{1-p}, the right-hand side of g(s) = target.
  double target = 0;
  std::vector<Root> roots;  // ascending s
  /// More than count_cap roots were found; `roots` holds the first count_cap.
  bool overflow = false;
  /// g - target changes sign just outside the window (roots may exist there).
  bool lower_edge = false;
  bool upper_edge = false;
  /// Grid points where A or B could not be evaluated (non-positive, overflow,
  /// domain violation). Such points are skipped by the scan.
  int eval_failures = 0;
  std::string first_failure;
};

/// Thrown by g_of_s when a coefficient is non-positive or non-finite.
class CoefficientError : public expr::EvalError {
public:
  CoefficientError(const std::string& what, double s, std::string subexpression);
  double s() const { return s_; }

private:
  double s_;
};

/// g(s) = s^{1-p} A(s, (m_r1/n_q1) s) / B((n_q2/n_q1) s, (m_r2/n_q1) s).
double g_of_s(const ProblemSpec& spec, const norms::NormTable& table, double s);

/// As above with a pre-built parameter binding (avoids rebuilding it per call).
double g_of_s(const ProblemSpec& spec, const norms::NormTable& table,
              const expr::ParamBinding& params, double s);

/// All roots of g(s) = lambda ||U_p||_q1^{1-p} inside the window.
///
/// g - target is sampled on a log-spaced grid. Sign changes are refined with
/// Brent's method. Grid-local minima of |g - target| are refined with a
/// derivative-free minimiser: a minimum within tangential_tol of zero is a
/// tangential (double) root counted once, and a minimum that dips below zero
/// between two grid points yields the two nearby transversal roots the grid
/// could not separate.
SolveResult solve_single(const ProblemSpec& spec, const norms::NormTable& table, double lambda,
                         Window window, const SolveOptions& opts = {});

/// s -> (s, s n_q2/n_q1, s m_r1/n_q1, s m_r2/n_q1).
Quadruple lift_quadruple(const norms::NormTable& table, double s);

/// Largest relative residual of the four equations
///   X^{1-p} = lambda (B(s2, t2) / A(s1, t1)) N_X^{1-p},  X in {s1, s2, t1, t2}.
double system_residual(const ProblemSpec& spec, const norms::NormTable& table, double lambda,
                       const Quadruple& quad);

/// u = (s / n_q1) U_p and u' = (s / n_q1) U_p' on the grid.
timemap::ProfileSample reconstruct(const timemap::Profile& profile,
                                   const norms::NormTable& table, double s,
                                   const std::vector<double>& grid,
                                   double delta = timemap::kDefaultDelta);

/// max over the sample of
///   |A(s1,t1) u'' - lambda B(s2,t2) u^p| / |A(s1,t1) u''|
/// with u'' = (s/n_q1) U_p^p and (s1, s2, t1, t2) the lifted quadruple.
double nonlocal_residual(const ProblemSpec& spec, const norms::NormTable& table, double lambda,
                         double s, const timemap::ProfileSample& sample);

struct Threshold {
  double lambda = 0;
  std::size_t count_below = 0;
  std::size_t count_above = 0;
  /// False when a neighbouring solve hit the count cap.
  bool reliable = true;
};

struct BifurcationDiagram {
  std::vector<double> lambda_grid;
  std::vector<SolveResult> results;  // one per lambda_grid entry
  std::vector<Threshold> thresholds;
  Window window{};
  int count_cap = 0;
};

struct SweepOptions {
  SolveOptions solve;
  /// Relative lambda accuracy of located thresholds.
  double threshold_tol = 1e-9;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 1;
};

/// solve_single for every grid lambda, then bisection in lambda between
/// neighbours whose root counts differ. Output does not depend on `threads`.
BifurcationDiagram sweep(const ProblemSpec& spec, const norms::NormTable& table,
                         const std::vector<double>& lambda_grid, Window window,
                         const SweepOptions& opts = {});

/// n values from lo to hi, linear or geometric; the end points are exact.
std::vector<double> lambda_range(double lo, double hi, int n, bool logarithmic);

} // namespace blowup::bifurcation
