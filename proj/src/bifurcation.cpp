#include "blowup/bifurcation.hpp"

#include "blowup/errors.hpp"
#include "blowup/rootfind.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace blowup::bifurcation {

namespace {

constexpr const char* kAutoBound[] = {"p", "q1", "q2", "r1", "r2"};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

} // namespace

std::string_view to_string(RootKind kind) {
  switch (kind) {
  case RootKind::Transversal: return "transversal";
  case RootKind::Tangential: return "tangential";
  case RootKind::WindowEdge: return "window-edge";
  }
  return "?";
}

ProblemSpec make_problem(double p, double q1, double q2, double r1, double r2,
                         std::string_view A_src, std::string_view B_src,
                         expr::ParamBinding params) {
  auto report = norms::validate_exponents(p, q1, q2, r1, r2);
  if (!report.ok()) throw norms::ExponentViolation(std::move(report));
  for (const char* name : kAutoBound) {
    if (params.count(name)) {
      throw DomainError(std::string("parameter '") + name +
                        "' is bound from the exponents and cannot be set");
    }
  }
  ProblemSpec spec;
  spec.p = p;
  spec.q1 = q1;
  spec.q2 = q2;
  spec.r1 = r1;
  spec.r2 = r2;
  spec.A = expr::parse(A_src);
  spec.B = expr::parse(B_src);
  spec.params = std::move(params);
  return spec;
}

expr::ParamBinding effective_params(const ProblemSpec& spec) {
  expr::ParamBinding out = spec.params;
  out["p"] = spec.p;
  out["q1"] = spec.q1;
  out["q2"] = spec.q2;
  out["r1"] = spec.r1;
  out["r2"] = spec.r2;
  return out;
}

namespace {
std::string shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(v);
}
} // namespace

CoefficientError::CoefficientError(const std::string& what, double s, std::string subexpression)
    : expr::EvalError(what + " at s = " + shortest(s), std::move(subexpression)), s_(s) {}

Window default_window(const norms::NormTable& table) {
  return {1e-6 * table.n_q1, 1e6 * table.n_q1};
}

double g_of_s(const ProblemSpec& spec, const norms::NormTable& table,
              const expr::ParamBinding& params, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("g(s) requires s > 0");
  const double t1 = table.m_r1 / table.n_q1 * s;
  const double s2 = table.n_q2 / table.n_q1 * s;
  const double t2 = table.m_r2 / table.n_q1 * s;
  const double a = expr::eval(spec.A, s, t1, params);
  const double b = expr::eval(spec.B, s2, t2, params);
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw CoefficientError("A(s, t) = " + shortest(a) + " is not positive and finite", s,
                           spec.A.print());
  }
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw CoefficientError("B(s, t) = " + shortest(b) + " is not positive and finite", s,
                           spec.B.print());
  }
  return std::pow(s, 1.0 - spec.p) * (a / b);
}

double g_of_s(const ProblemSpec& spec, const norms::NormTable& table, double s) {
  return g_of_s(spec, table, effective_params(spec), s);
}

Quadruple lift_quadruple(const norms::NormTable& table, double s) {
  const double ratio = s / table.n_q1;
  return {s, ratio * table.n_q2, ratio * table.m_r1, ratio * table.m_r2};
}

namespace {

// h(s) = g(s) - target with evaluation failures mapped to NaN.
class Scanner {
public:
  Scanner(const ProblemSpec& spec, const norms::NormTable& table, double target,
          SolveResult& result)
      : spec_(spec), table_(table), params_(effective_params(spec)), target_(target),
        result_(result) {}

  double h(double s) const {
    try {
      return g_of_s(spec_, table_, params_, s) - target_;
    } catch (const expr::EvalError& e) {
      if (result_.first_failure.empty()) result_.first_failure = e.what();
      return std::numeric_limits<double>::quiet_NaN();
    }
  }

  // h as a function of log s; failures become NaN.
  double h_log(double x) const { return h(std::exp(x)); }

  double g(double s) const { return g_of_s(spec_, table_, params_, s); }

private:
  const ProblemSpec& spec_;
  const norms::NormTable& table_;
  expr::ParamBinding params_;
  double target_;
  SolveResult& result_;
};

struct Candidate {
  double s;
  RootKind kind;
};

} // namespace

SolveResult solve_single(const ProblemSpec& spec, const norms::NormTable& table, double lambda,
                         Window window, const SolveOptions& opts) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
  if (!(window.s_min > 0.0 && window.s_max > window.s_min && std::isfinite(window.s_max))) {
    throw DomainError("window must satisfy 0 < s_min < s_max");
  }
  if (opts.count_cap < 1) throw DomainError("count_cap must be at least 1");
  if (opts.grid_points < 3) throw DomainError("grid_points must be at least 3");

  SolveResult result;
  result.lambda = lambda;
  result.target = lambda * std::pow(table.n_q1, 1.0 - spec.p);
  const double target = result.target;
  const double tol = opts.tangential_tol * std::abs(target);
  Scanner scan(spec, table, target, result);

  const int n = opts.grid_points;
  const double x_lo = std::log(window.s_min);
  const double x_hi = std::log(window.s_max);
  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<double> hs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    xs[i] = (i == n - 1) ? x_hi : x_lo + f * (x_hi - x_lo);
    hs[i] = scan.h_log(xs[i]);
    if (std::isnan(hs[i])) ++result.eval_failures;
  }

  std::vector<Candidate> found;
  // Brent in x = log s, so an absolute x-tolerance is a relative s-tolerance.
  auto refine = [&](double xa, double xb, double ha, double hb) {
    while (!std::isfinite(ha) || !std::isfinite(hb)) {
      const double xm = 0.5 * (xa + xb);
      const double hm = scan.h_log(xm);
      if (std::isnan(hm) || !(xm > xa && xm < xb)) break;
      if (sign_of(hm) == sign_of(ha)) {
        xa = xm;
        ha = hm;
      } else {
        xb = xm;
        hb = hm;
      }
    }
    const double x = rootfind::brent_zero([&](double v) { return scan.h_log(v); }, xa, xb, ha,
                                          hb, 0.0, opts.root_tol);
    return std::exp(x);
  };

  for (int i = 0; i + 1 < n; ++i) {
    const double ha = hs[i];
    const double hb = hs[i + 1];
    if (std::isnan(ha) || std::isnan(hb)) continue;
    if (ha == 0.0) {
      const bool crossing = i > 0 && !std::isnan(hs[i - 1]) && sign_of(hs[i - 1]) != sign_of(hb);
      found.push_back({std::exp(xs[i]), crossing || i == 0 ? RootKind::Transversal
                                                           : RootKind::Tangential});
      continue;
    }
    if (hb == 0.0) continue;  // picked up at i + 1
    if (sign_of(ha) != sign_of(hb)) {
      found.push_back({refine(xs[i], xs[i + 1], ha, hb), RootKind::Transversal});
    }
  }
  if (!std::isnan(hs[n - 1]) && hs[n - 1] == 0.0) {
    found.push_back({std::exp(xs[n - 1]), RootKind::Transversal});
  }

  // Grid-local minima of |h| without a sign change around them.
  for (int i = 1; i + 1 < n; ++i) {
    const double hl = hs[i - 1], hc = hs[i], hr = hs[i + 1];
    if (std::isnan(hl) || std::isnan(hc) || std::isnan(hr)) continue;
    const int sg = sign_of(hc);
    if (sg == 0 || sign_of(hl) != sg || sign_of(hr) != sg) continue;
    if (!(std::abs(hc) <= std::abs(hl) && std::abs(hc) <= std::abs(hr))) continue;
    if (std::abs(hc) == std::abs(hl) && std::abs(hc) == std::abs(hr) && std::abs(hc) > tol) {
      continue;  // flat, clearly away from zero
    }
    auto oriented = [&](double x) {
      const double v = scan.h_log(x);
      return std::isnan(v) ? std::numeric_limits<double>::infinity() : sg * v;
    };
    const auto m = rootfind::brent_minimize(oriented, xs[i - 1], xs[i + 1], 1e-9);
    if (!std::isfinite(m.fx)) continue;
    if (std::abs(m.fx) <= tol) {
      found.push_back({std::exp(m.x), RootKind::Tangential});
    } else if (m.fx < 0.0) {
      // Two crossings closer together than the grid spacing.
      const double hm = sg * m.fx;
      found.push_back({refine(xs[i - 1], m.x, hl, hm), RootKind::Transversal});
      found.push_back({refine(m.x, xs[i + 1], hm, hr), RootKind::Transversal});
    }
  }

  // Near-zero values at the window boundary that are still falling towards it.
  auto edge_touch = [&](int edge, int inner) {
    const double he = hs[edge], hi = hs[inner];
    if (std::isnan(he) || std::isnan(hi) || he == 0.0) return;
    if (std::abs(he) <= tol && std::abs(he) < std::abs(hi) && sign_of(he) == sign_of(hi)) {
      found.push_back({std::exp(xs[edge]), RootKind::WindowEdge});
    }
  };
  edge_touch(0, 1);
  edge_touch(n - 1, n - 2);

  // Sign probes one to three decades outside the window.
  auto probe_edge = [&](double x_edge, double h_edge, double direction) {
    if (std::isnan(h_edge) || h_edge == 0.0) return false;
    for (int k = 1; k <= 3; ++k) {
      double hv;
      try {
        hv = scan.g(std::exp(x_edge + direction * k * std::log(10.0))) - target;
      } catch (const std::exception&) {
        continue;
      }
      if (!std::isnan(hv) && sign_of(hv) != sign_of(h_edge)) return true;
    }
    return false;
  };
  result.lower_edge = probe_edge(xs[0], hs[0], -1.0);
  result.upper_edge = probe_edge(xs[n - 1], hs[n - 1], +1.0);

  std::sort(found.begin(), found.end(),
            [](const Candidate& a, const Candidate& b) { return a.s < b.s; });
  std::vector<Candidate> unique;
  for (const auto& c : found) {
    if (!unique.empty() && std::abs(c.s - unique.back().s) <= 1e-9 * c.s) {
      if (unique.back().kind != RootKind::Transversal && c.kind == RootKind::Transversal) {
        unique.back() = c;
      }
      continue;
    }
    unique.push_back(c);
  }
  if (static_cast<int>(unique.size()) > opts.count_cap) {
    result.overflow = true;
    unique.resize(static_cast<std::size_t>(opts.count_cap));
  }
  result.roots.reserve(unique.size());
  for (const auto& c : unique) {
    Root r;
    r.s = c.s;
    r.kind = c.kind;
    const double hv = scan.h(c.s);
    r.residual = std::isnan(hv) ? std::numeric_limits<double>::infinity()
                                : std::abs(hv) / std::abs(target);
    r.quadruple = lift_quadruple(table, c.s);
    result.roots.push_back(r);
  }
  return result;
}

double system_residual(const ProblemSpec& spec, const norms::NormTable& table, double lambda,
                       const Quadruple& q) {
  const auto params = effective_params(spec);
  const double a = expr::eval(spec.A, q.s1, q.t1, params);
  const double b = expr::eval(spec.B, q.s2, q.t2, params);
  const double factor = lambda * b / a;
  const double e = 1.0 - spec.p;
  const std::array<std::pair<double, double>, 4> eqs = {{
      {q.s1, table.n_q1},
      {q.s2, table.n_q2},
      {q.t1, table.m_r1},
      {q.t2, table.m_r2},
  }};
  double worst = 0.0;
  for (const auto& [x, norm] : eqs) {
    const double lhs = std::pow(x, e);
    const double rhs = factor * std::pow(norm, e);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
  }
  return worst;
}

timemap::ProfileSample reconstruct(const timemap::Profile& profile,
                                   const norms::NormTable& table, double s,
                                   const std::vector<double>& grid, double delta) {
  if (!(s > 0.0)) throw DomainError("reconstruct requires s > 0");
  auto sample = timemap::sample(profile, grid, delta);
  const double scale = s / table.n_q1;
  for (auto& v : sample.values) v *= scale;
  for (auto& d : sample.derivs) d *= scale;
  return sample;
}

double nonlocal_residual(const ProblemSpec& spec, const norms::NormTable& table, double lambda,
                         double s, const timemap::ProfileSample& sample) {
  const auto q = lift_quadruple(table, s);
  const auto params = effective_params(spec);
  const double a = expr::eval(spec.A, q.s1, q.t1, params);
  const double b = expr::eval(spec.B, q.s2, q.t2, params);
  const double scale = s / table.n_q1;
  double worst = 0.0;
  for (double u : sample.values) {
    const double U = u / scale;
    const double u_second = scale * std::pow(U, spec.p);
    const double lhs = a * u_second;
    const double rhs = lambda * b * std::pow(u, spec.p);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
  }
  return worst;
}

std::vector<double> lambda_range(double lo, double hi, int n, bool logarithmic) {
  if (n < 1) throw DomainError("lambda range needs n >= 1");
  if (!(lo > 0.0 && hi >= lo)) throw DomainError("lambda range must satisfy 0 < min <= max");
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = logarithmic ? std::log10(lo) : lo;
  const double b = logarithmic ? std::log10(hi) : hi;
  for (int i = 0; i < n; ++i) {
    const double v = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = logarithmic ? std::pow(10.0, v) : v;
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

template <class Job>
void run_parallel(std::size_t count, unsigned threads, Job&& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

} // namespace

BifurcationDiagram sweep(const ProblemSpec& spec, const norms::NormTable& table,
                         const std::vector<double>& lambda_grid, Window window,
                         const SweepOptions& opts) {
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    if (!(lambda_grid[i] > 0.0) || (i > 0 && !(lambda_grid[i] > lambda_grid[i - 1]))) {
      throw DomainError("lambda grid must be positive and strictly increasing");
    }
  }
  BifurcationDiagram diagram;
  diagram.lambda_grid = lambda_grid;
  diagram.window = window;
  diagram.count_cap = opts.solve.count_cap;
  diagram.results.resize(lambda_grid.size());

  run_parallel(lambda_grid.size(), opts.threads, [&](std::size_t i) {
    diagram.results[i] = solve_single(spec, table, lambda_grid[i], window, opts.solve);
  });

  std::vector<std::size_t> changes;
  for (std::size_t i = 0; i + 1 < lambda_grid.size(); ++i) {
    if (diagram.results[i].roots.size() != diagram.results[i + 1].roots.size()) {
      changes.push_back(i);
    }
  }
  diagram.thresholds.resize(changes.size());
  run_parallel(changes.size(), opts.threads, [&](std::size_t k) {
    const std::size_t i = changes[k];
    const auto& left = diagram.results[i];
    const auto& right = diagram.results[i + 1];
    const std::size_t c_lo = left.roots.size();
    double lo = lambda_grid[i];
    double hi = lambda_grid[i + 1];
    std::size_t c_hi = right.roots.size();
    bool overflow = left.overflow || right.overflow;
    while (hi / lo - 1.0 > opts.threshold_tol) {
      const double mid = std::sqrt(lo * hi);
      if (!(mid > lo && mid < hi)) break;
      const auto r = solve_single(spec, table, mid, window, opts.solve);
      if (r.roots.size() == c_lo) {
        lo = mid;
      } else {
        hi = mid;
        c_hi = r.roots.size();
        overflow = overflow || r.overflow;
      }
    }
    Threshold t;
    t.lambda = std::sqrt(lo * hi);
    t.count_below = c_lo;
    t.count_above = c_hi;
    t.reliable = !overflow;
    diagram.thresholds[k] = t;
  });
  return diagram;
}

} // namespace blowup::bifurcation
