#include "blowup/scenarios.hpp"

#include "blowup/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace blowup::scenarios {

namespace {

using bifurcation::Window;

double param(const expr::ParamBinding& params, const char* name) {
  const auto it = params.find(name);
  if (it == params.end()) throw DomainError(std::string("missing scenario parameter ") + name);
  return it->second;
}

// ||U_p||_q2 + ||U_p'||_r2, the common denominator of cor1 and cor2.
double denom(const NormTable& t) { return t.n_q2 + t.m_r2; }

Scenario cor1() {
  Scenario sc;
  sc.name = "cor1";
  sc.A_src = "s^(p-1)*(1+t)";
  sc.B_src = "s+t";
  sc.thresholds = [](const NormTable& t) {
    return std::vector<double>{std::pow(t.n_q1, t.p - 1.0) * t.m_r1 / denom(t)};
  };
  sc.count = [](const NormTable& t, double lambda) {
    const double thr = std::pow(t.n_q1, t.p - 1.0) * t.m_r1 / denom(t);
    return Count{lambda > thr ? 1u : 0u, false};
  };
  sc.roots = [](const NormTable& t, double lambda, Window) {
    const double d = lambda * denom(t) - std::pow(t.n_q1, t.p - 1.0) * t.m_r1;
    if (!(d > 0.0)) return std::vector<double>{};
    return std::vector<double>{std::pow(t.n_q1, t.p) / d};
  };
  sc.note = "threshold uses the derivative norm ||U_p'||_r1";
  return sc;
}

Scenario cor2(const expr::ParamBinding& overrides) {
  Scenario sc;
  sc.name = "cor2";
  sc.A_src = "s^p*((t-a)^2+b)";
  sc.B_src = "s+t";
  sc.params = {{"a", 1.0}, {"b", 1.0}};
  for (const auto& [k, v] : overrides) sc.params[k] = v;
  const double a = param(sc.params, "a");
  const double b = param(sc.params, "b");
  if (!(a > 0.0 && b > 0.0)) throw DomainError("cor2 needs a, b > 0");
  sc.thresholds = [a, b](const NormTable& t) {
    const double scale = std::pow(t.n_q1, t.p) / denom(t);
    return std::vector<double>{b * scale, (a * a + b) * scale};
  };
  sc.count = [a, b](const NormTable& t, double lambda) {
    const double scale = std::pow(t.n_q1, t.p) / denom(t);
    const double lo = b * scale;
    const double hi = (a * a + b) * scale;
    if (lambda < lo) return Count{0, false};
    if (lambda == lo) return Count{1, false};
    if (lambda < hi) return Count{2, false};
    return Count{1, false};
  };
  // ((m_r1/n_q1) s - a)^2 + b = lambda (n_q2 + m_r2) / n_q1^p
  sc.roots = [a, b](const NormTable& t, double lambda, Window w) {
    std::vector<double> out;
    const double rhs = lambda * denom(t) / std::pow(t.n_q1, t.p) - b;
    if (rhs < 0.0) return out;
    const double k = t.m_r1 / t.n_q1;
    const double root = std::sqrt(rhs);
    for (double v : {(a - root) / k, (a + root) / k}) {
      if (v > 0.0 && v >= w.s_min && v <= w.s_max &&
          (out.empty() || v != out.back())) {
        out.push_back(v);
      }
    }
    return out;
  };
  return sc;
}

Scenario cor3() {
  Scenario sc;
  sc.name = "cor3";
  sc.A_src = "2+sin(s)";
  sc.B_src = "t^(1-p)";
  sc.thresholds = [](const NormTable& t) {
    const double base = std::pow(t.m_r2, t.p - 1.0);
    return std::vector<double>{base, 3.0 * base};
  };
  sc.count = [](const NormTable& t, double lambda) {
    const double base = std::pow(t.m_r2, t.p - 1.0);
    if (lambda < base || lambda > 3.0 * base) return Count{0, false};
    return Count{0, true};
  };
  // ||U_p'||_r2^{p-1} (2 + sin s) = lambda
  sc.roots = [](const NormTable& t, double lambda, Window w) {
    std::vector<double> out;
    const double c = lambda / std::pow(t.m_r2, t.p - 1.0) - 2.0;
    if (c < -1.0 || c > 1.0) return out;
    const double first = std::asin(c);
    const double second = std::numbers::pi - first;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const auto k_lo = static_cast<long long>(std::floor((w.s_min - second) / two_pi));
    const auto k_hi = static_cast<long long>(std::ceil((w.s_max - first) / two_pi));
    for (long long k = k_lo; k <= k_hi; ++k) {
      for (double base : {first, second}) {
        const double v = base + two_pi * static_cast<double>(k);
        if (v >= w.s_min && v <= w.s_max) out.push_back(v);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  sc.note = "B is unbounded as t -> 0 but t is always a positive multiple of s";
  return sc;
}

Scenario cor4() {
  Scenario sc;
  sc.name = "cor4";
  sc.A_src = "exp(s)";
  sc.B_src = "1";
  sc.thresholds = [](const NormTable& t) {
    return std::vector<double>{std::pow(std::numbers::e / (t.p - 1.0) * t.n_q1, t.p - 1.0)};
  };
  sc.count = [](const NormTable& t, double lambda) {
    const double thr = std::pow(std::numbers::e / (t.p - 1.0) * t.n_q1, t.p - 1.0);
    if (lambda < thr) return Count{0, false};
    if (lambda == thr) return Count{1, false};
    return Count{2, false};
  };
  return sc;
}

} // namespace

std::vector<Scenario> catalog() { return {cor1(), cor2({}), cor3(), cor4()}; }

Scenario find(std::string_view name, const expr::ParamBinding& params) {
  Scenario sc;
  if (name == "cor1") sc = cor1();
  else if (name == "cor2") sc = cor2(params);
  else if (name == "cor3") sc = cor3();
  else if (name == "cor4") sc = cor4();
  else throw DomainError("unknown scenario '" + std::string(name) + "' (cor1..cor4)");
  if (name != "cor2") {
    for (const auto& [k, v] : params) sc.params[k] = v;
  }
  return sc;
}

bifurcation::ProblemSpec to_problem(const Scenario& scenario, const NormTable& table) {
  return bifurcation::make_problem(table.p, table.q1, table.q2, table.r1, table.r2,
                                   scenario.A_src, scenario.B_src, scenario.params);
}

ScenarioReport check_scenario(const Scenario& scenario, const NormTable& table, double lambda,
                              bifurcation::Window window, const bifurcation::SolveOptions& opts,
                              double root_tol) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  ScenarioReport rep;
  rep.name = scenario.name;
  rep.lambda = lambda;
  rep.expected = scenario.count(table, lambda);
  const auto spec = to_problem(scenario, table);
  const auto res = bifurcation::solve_single(spec, table, lambda, window, opts);
  rep.found = res.roots.size();
  rep.overflow = res.overflow;

  std::ostringstream os;
  if (rep.expected.infinite) {
    if (!res.overflow) {
      os << "expected infinitely many roots (count cap overflow), found " << rep.found;
      rep.mismatches.push_back(os.str());
    }
  } else if (res.overflow || rep.found != rep.expected.value) {
    os << "expected " << rep.expected.value << " roots, found " << rep.found
       << (res.overflow ? " (overflow)" : "");
    rep.mismatches.push_back(os.str());
  }

  if (scenario.roots) {
    const auto analytic = scenario.roots(table, lambda, window);
    for (const auto& root : res.roots) {
      if (analytic.empty()) break;
      const auto nearest = std::min_element(
          analytic.begin(), analytic.end(),
          [&](double a, double b) { return std::abs(a - root.s) < std::abs(b - root.s); });
      RootCheck rc{root.s, *nearest, std::abs(root.s - *nearest) / *nearest, root.kind};
      if (root.kind == bifurcation::RootKind::Transversal && rc.rel_error > root_tol) {
        std::ostringstream m;
        m << "root " << root.s << " differs from closed form " << *nearest << " by "
          << rc.rel_error;
        rep.mismatches.push_back(m.str());
      }
      rep.roots.push_back(rc);
    }
  }
  return rep;
}

AsymptoticPrediction cor4_asymptotics(const NormTable& table, double lambda) {
  if (!(lambda > std::numbers::e)) throw DomainError("cor4 asymptotics need lambda > e");
  const double lead = std::pow(lambda, -1.0 / (table.p - 1.0)) * table.n_q1;
  AsymptoticPrediction out;
  out.s1 = lead * (1.0 + lead / (table.p - 1.0));
  const double log_l = std::log(lambda);
  out.s2 = log_l + (table.p - 1.0) * std::log(log_l);
  return out;
}

} // namespace blowup::scenarios
