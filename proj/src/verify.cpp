#include "blowup/verify.hpp"

#include "blowup/bifurcation.hpp"
#include "blowup/errors.hpp"
#include "blowup/expcase.hpp"
#include "blowup/oracles.hpp"
#include "blowup/scenarios.hpp"
#include "blowup/specfun.hpp"
#include "blowup/timemap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace blowup::verify {

namespace {

using std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void add(Report& report, std::string name, double measured, double allowed) {
  // NaN never passes.
  report.checks.push_back({std::move(name), measured, allowed, measured <= allowed});
}

void specfun_checks(Report& r) {
  using specfun::beta;
  add(r, "specfun.beta(1/2,1/2)", rel(beta({0.5, 0.5}), pi), 1e-13);
  add(r, "specfun.beta(1,1)", rel(beta({1.0, 1.0}), 1.0), 1e-13);
  add(r, "specfun.beta(1/4,3/4)", rel(beta({0.25, 0.75}), pi * std::numbers::sqrt2), 1e-12);
  double worst = 0;
  for (double x : {0.1, 0.7, 2.5})
    for (double y : {0.3, 1.5, 4.0})
      worst = std::max(worst, rel(beta({x, y}), oracles::beta_quadrature(x, y)));
  add(r, "specfun.beta_vs_quadrature", worst, 1e-12);
}

void profile_checks(Report& r, double p) {
  const std::string tag = "profile.p=" + fmt(p) + ".";
  const auto profile = timemap::make_profile(p);
  add(r, tag + "L_p_vs_quadrature", rel(profile.length(), oracles::length_quadrature(p)), 1e-12);
  add(r, tag + "ode_residual", timemap::ode_residual(profile, 0.1), 1e-5);

  double worst = 0;
  constexpr int n = 200;
  for (int i = 0; i <= n; ++i) {
    const double x = 0.999 * i / n;
    const double z = oracles::F_tanh_sinh(p, profile.U(x) / profile.mu());
    worst = std::max(worst, std::abs(z - profile.length() * x) / profile.length());
  }
  add(r, tag + "time_map_consistency", worst, 1e-9);

  const auto rk = oracles::rk_profile(p, profile.mu(), 0.9);
  add(r, tag + "rk_oracle_x=0.9", rel(profile.U(0.9), rk.u), 1e-7);
}

void norm_checks(Report& r, double p, double perturb) {
  const std::string tag = "norms.p=" + fmt(p) + ".";
  const double q_bound = 0.5 * (p - 1.0);
  const double r_bound = (p - 1.0) / (p + 1.0);
  double worst_q = 0, worst_r = 0;
  for (double f : {0.1, 0.5, 0.9}) {
    const double q = f * q_bound;
    const double rr = f * r_bound;
    worst_q = std::max(worst_q, rel(norms::norm_U(p, q) * (1 + perturb), oracles::norm_U_sspace(p, q)));
    worst_r = std::max(worst_r, rel(norms::norm_U_prime(p, rr) * (1 + perturb),
                                    oracles::norm_U_prime_sspace(p, rr)));
  }
  add(r, tag + "U_q_vs_quadrature", worst_q, 1e-7);
  add(r, tag + "U_prime_r_vs_quadrature", worst_r, 1e-7);

  const auto profile = timemap::make_profile(p);
  const double q = 0.5 * q_bound;
  const double rr = 0.5 * r_bound;
  const double worst_x =
      std::max(rel(norms::norm_U(p, q) * (1 + perturb), oracles::norm_U_xspace(profile, q)),
               rel(norms::norm_U_prime(p, rr) * (1 + perturb),
                   oracles::norm_U_prime_xspace(profile, rr)));
  add(r, tag + "xspace_integration", worst_x, 1e-7);
}

void scenario_case(Report& r, const scenarios::Scenario& sc, const norms::NormTable& table,
                   double lambda, bifurcation::Window window, const std::string& label) {
  const std::string tag = "scenario." + sc.name + "." + label + ".";
  const auto report = scenarios::check_scenario(sc, table, lambda, window);
  const bool count_ok = report.expected.infinite
                            ? report.overflow
                            : (!report.overflow && report.found == report.expected.value);
  add(r, tag + "count", count_ok ? 0.0 : 1.0, 0.0);
  if (!report.roots.empty()) {
    double worst = 0;
    for (const auto& rc : report.roots) worst = std::max(worst, rc.rel_error);
    add(r, tag + "roots", worst, 1e-8);
  }
}

void scenario_checks(Report& r, const std::string& only) {
  const auto table = norms::make_norm_table(3.0, 0.5, 0.5, 0.25, 0.25);
  const auto window = bifurcation::default_window(table);
  for (const auto& sc : scenarios::catalog()) {
    if (!only.empty() && sc.name != only) continue;
    const auto th = sc.thresholds(table);
    if (sc.name == "cor3") {
      scenario_case(r, sc, table, 0.5 * th.front(), window, "below_band");
      scenario_case(r, sc, table, 2.0 * th.back(), window, "above_band");
      scenario_case(r, sc, table, 2.0 * th.front(), {1e-3, 1e5}, "in_band");
    } else if (th.size() == 1) {
      scenario_case(r, sc, table, 0.5 * th.front(), window, "below");
      scenario_case(r, sc, table, (sc.name == "cor4" ? 10.0 : 2.0) * th.front(), window,
                    "above");
    } else {
      scenario_case(r, sc, table, 0.5 * th.front(), window, "regime_i");
      scenario_case(r, sc, table, std::sqrt(th[0] * th[1]), window, "regime_iii");
      scenario_case(r, sc, table, 2.0 * th.back(), window, "regime_iv");
    }
  }
}

void exp_checks(Report& r) {
  add(r, "exp.prime_norm(1/2)", rel(std::sqrt(expcase::exp_prime_norm(0.5)), 2.0 * std::sqrt(2.0 * pi)),
      1e-10);
  double worst = 0;
  for (double lambda : {0.1, 1.0, 10.0})
    for (double rr : {0.25, 0.5, 0.75})
      worst = std::max(worst, rel(oracles::exp_prime_norm_xspace(rr, lambda), expcase::exp_prime_norm(rr)));
  add(r, "exp.lambda_independence", worst, 1e-7);

  const auto spec = expcase::make_exp_problem(0.5, 0.5, "1+t", "2+t", 1.0);
  const auto sol = expcase::solve_exp(spec, timemap::uniform_grid(201));
  add(r, "exp.residual", expcase::exp_residual(spec, sol), 1e-7);
  const auto prof = expcase::make_exp_profile(spec.lambda);
  double back = 0;
  for (std::size_t i = 0; i < sol.sample.grid.size(); ++i) {
    const double x = sol.sample.grid[i];
    const double target = expcase::eval_U_lambda(prof, x);
    back = std::max(back, std::abs(sol.sample.values[i] + sol.profile_shift - target) /
                              std::max(1.0, std::abs(target)));
  }
  add(r, "exp.back_substitution", back, 1e-10);
}

void asymptotic_checks(Report& r) {
  const auto table = asymptotic_table();
  const auto a4 = cor4_sample(table, 1e4);
  const auto a6 = cor4_sample(table, 1e6);
  const auto a8 = cor4_sample(table, 1e8);
  const auto a16 = cor4_sample(table, 1e16);
  // Largest successive ratio of s1 errors; below 1 means strictly decreasing.
  const double ratio = std::max(a6.s1_rel_error / a4.s1_rel_error, a8.s1_rel_error / a6.s1_rel_error);
  r.checks.push_back({"cor4.asymptotics.s1_error_decreasing", ratio, 1.0, ratio < 1.0});
  const double r4 = a4.s2_ratio;
  r.checks.push_back({"cor4.asymptotics.s2_ratio_1e4_within_0.5_to_2", r4, 2.0, r4 >= 0.5 && r4 <= 2.0});
  const double r16 = a16.s2_ratio;
  r.checks.push_back({"cor4.asymptotics.s2_ratio_1e16_within_0.9_to_1.1", r16, 1.1, r16 >= 0.9 && r16 <= 1.1});
}

} // namespace

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

norms::NormTable asymptotic_table() { return norms::make_norm_table(9.0, 2.0, 2.0, 0.4, 0.4); }

AsymptoticSample cor4_sample(const norms::NormTable& table, double lambda) {
  AsymptoticSample out;
  out.lambda = lambda;
  const auto pred = scenarios::cor4_asymptotics(table, lambda);
  out.s1_pred = pred.s1;
  out.s2_pred = pred.s2;
  const auto spec = scenarios::to_problem(scenarios::find("cor4"), table);
  const bifurcation::Window window{1e-12 * table.n_q1, 1e3};
  const auto res = bifurcation::solve_single(spec, table, lambda, window);
  if (res.roots.size() != 2) {
    out.s1 = out.s2 = out.s1_rel_error = out.s2_ratio = kNaN;
    return out;
  }
  out.s1 = res.roots[0].s;
  out.s2 = res.roots[1].s;
  out.s1_rel_error = std::abs(out.s1 - out.s1_pred) / out.s1;
  const double L = std::log(lambda);
  out.s2_ratio = (out.s2 - L) / ((table.p - 1.0) * std::log(L));
  return out;
}

Report run(const Options& opts) {
  Report report;
  if (!opts.scenario.empty()) scenarios::find(opts.scenario);  // validates the name
  if (opts.asymptotics) {
    if (!opts.scenario.empty() && opts.scenario != "cor4")
      throw DomainError("asymptotic checks exist only for scenario cor4");
    asymptotic_checks(report);
    return report;
  }
  if (!opts.scenario.empty()) {
    scenario_checks(report, opts.scenario);
    return report;
  }
  specfun_checks(report);
  for (double p : opts.ps) {
    profile_checks(report, p);
    norm_checks(report, p, opts.perturb_norms);
  }
  scenario_checks(report, "");
  exp_checks(report);
  asymptotic_checks(report);
  return report;
}

} // namespace blowup::verify
