#pragma once

#include "blowup/bifurcation.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace blowup::scenarios {

/// Analytic solution count; `infinite` marks the oscillating cor3 band.
struct Count {
  std::size_t value = 0;
  bool infinite = false;
  friend bool operator==(const Count&, const Count&) = default;
};

using norms::NormTable;

/// A coefficient pair with a known bifurcation diagram.
struct Scenario {
  std::string name;
  std::string A_src;
  std::string B_src;
  expr::ParamBinding params;
  /// Increasing lambda values where the analytic count changes.
  std::function<std::vector<double>(const NormTable&)> thresholds;
  std::function<Count(const NormTable&, double lambda)> count;
  /// Closed-form roots inside the window, when available.
  std::function<std::vector<double>(const NormTable&, double lambda, bifurcation::Window)> roots;
  std::string note;
};

/// cor1: A = s^(p-1)*(1+t), B = s+t          one threshold, 0 then 1 solution
/// cor2: A = s^p*((t-a)^2+b), B = s+t        0 / 1 / 2 / 1, a = b = 1 by default
/// cor3: A = 2+sin(s), B = t^(1-p)           infinitely many inside a band
/// cor4: A = exp(s), B = 1                   0 / 1 / 2
///
/// The cor1 threshold and root use the derivative norm ||U_p'||_r1; the
/// reduced equation for these coefficients leaves no other reading.
std::vector<Scenario> catalog();

/// Throws DomainError for an unknown name; `params` override the defaults.
Scenario find(std::string_view name, const expr::ParamBinding& params = {});

bifurcation::ProblemSpec to_problem(const Scenario& scenario, const NormTable& table);

struct RootCheck {
  double numeric = 0;
  double analytic = 0;
  double rel_error = 0;
  bifurcation::RootKind kind = bifurcation::RootKind::Transversal;
};

struct ScenarioReport {
  std::string name;
  double lambda = 0;
  Count expected;
  std::size_t found = 0;
  bool overflow = false;
  std::vector<RootCheck> roots;
  std::vector<std::string> mismatches;
  bool pass() const { return mismatches.empty(); }
};

/// Solves with the generic engine and compares against the analytic answer.
/// Transversal roots must match closed forms to `root_tol` relative; an
/// infinite analytic count must produce an overflow-flagged result.
ScenarioReport check_scenario(const Scenario& scenario, const NormTable& table, double lambda,
                              bifurcation::Window window,
                              const bifurcation::SolveOptions& opts = {},
                              double root_tol = 1e-8);

/// Large-lambda predictions for the two cor4 branches:
///   s1 ~ lambda^{-1/(p-1)} n (1 + lambda^{-1/(p-1)} n / (p-1)),  n = ||U_p||_q1
///   s2 ~ log lambda + (p-1) log log lambda
struct AsymptoticPrediction {
  double s1 = 0;
  double s2 = 0;
};

AsymptoticPrediction cor4_asymptotics(const NormTable& table, double lambda);

} // namespace blowup::scenarios
