#include "cli/commands.hpp"

#include "blowup/bifurcation.hpp"
#include "blowup/expcase.hpp"
#include "blowup/norms.hpp"
#include "blowup/oracles.hpp"
#include "blowup/scenarios.hpp"
#include "blowup/verify.hpp"
#include "cli/emit.hpp"

#include <cmath>
#include <sstream>

namespace blowup::cli {

namespace {

using nlohmann::json;
namespace bif = blowup::bifurcation;

struct PowerSetup {
  norms::NormTable table;
  bif::ProblemSpec spec;
  bif::Window window{};
  bif::SolveOptions opts;
};

norms::NormTable table_of(const RunConfig& cfg) {
  return norms::make_norm_table(cfg.p_value(), cfg.q1, cfg.q2, cfg.r1, cfg.r2);
}

PowerSetup power_setup(const RunConfig& cfg) {
  if (cfg.problem != "power")
    throw ConfigError("this subcommand solves the power problem; use 'exp' for problem=exp");
  PowerSetup setup;
  setup.table = table_of(cfg);
  const bool custom = !cfg.A.empty() || !cfg.B.empty();
  if (!cfg.scenario.empty()) {
    if (custom) throw ConfigError("give either a scenario or A and B, not both");
    setup.spec = scenarios::to_problem(scenarios::find(cfg.scenario, cfg.params), setup.table);
  } else {
    if (cfg.A.empty() || cfg.B.empty()) throw ConfigError("give a scenario or both A and B");
    setup.spec = bif::make_problem(cfg.p_value(), cfg.q1, cfg.q2, cfg.r1, cfg.r2, cfg.A, cfg.B,
                                   cfg.params);
  }
  setup.window = bif::default_window(setup.table);
  if (cfg.s_min) setup.window.s_min = *cfg.s_min;
  if (cfg.s_max) setup.window.s_max = *cfg.s_max;
  if (!(setup.window.s_min < setup.window.s_max)) throw ConfigError("s_min must be below s_max");
  setup.opts.grid_points = cfg.grid_points;
  setup.opts.count_cap = cfg.count_cap;
  return setup;
}

double require_lambda(const RunConfig& cfg, const char* command) {
  if (!cfg.lambda) throw ConfigError(std::string(command) + " needs lambda");
  return *cfg.lambda;
}

json solve_flags(const bif::SolveResult& res) {
  return {{"overflow", res.overflow},
          {"lower_edge", res.lower_edge},
          {"upper_edge", res.upper_edge},
          {"eval_failures", res.eval_failures}};
}

std::string flag_line(const bif::SolveResult& res) {
  std::ostringstream os;
  os << "overflow=" << (res.overflow ? "true" : "false")
     << ",lower_edge=" << (res.lower_edge ? "true" : "false")
     << ",upper_edge=" << (res.upper_edge ? "true" : "false")
     << ",eval_failures=" << res.eval_failures;
  return os.str();
}

Table profile_table(const timemap::ProfileSample& sample) {
  Table t{{"x", "u", "u_prime"}, {}};
  for (std::size_t i = 0; i < sample.grid.size(); ++i)
    t.rows.push_back({sample.grid[i], sample.values[i], sample.derivs[i]});
  return t;
}

void emit(std::ostream& out, const RunConfig& cfg, const Table& table, const json& results,
          const json& flags, const std::vector<std::string>& comments) {
  if (cfg.format == "json") {
    write_json(out, echo(cfg), results, flags);
    return;
  }
  write_csv(out, table);
  for (const auto& c : comments) write_comment(out, c);
}

std::string summary(const std::vector<std::pair<std::string, Cell>>& items) {
  std::string s;
  for (const auto& [k, v] : items) s += (s.empty() ? "" : ",") + k + "=" + format_cell(v);
  return s;
}

json summary_json(const std::vector<std::pair<std::string, Cell>>& items) {
  json obj = json::object();
  for (const auto& [k, v] : items) obj[k] = cell_json(v);
  return obj;
}

expcase::ExpProblemSpec exp_setup(const RunConfig& cfg) {
  if (!cfg.scenario.empty()) throw ConfigError("scenarios describe the power problem only");
  if (cfg.A.empty() || cfg.B.empty()) throw ConfigError("the exponential problem needs A and B");
  return expcase::make_exp_problem(cfg.r1, cfg.r2, cfg.A, cfg.B,
                                   require_lambda(cfg, "the exponential problem"), cfg.params);
}

} // namespace

int cmd_norms(const RunConfig& cfg, std::ostream& out) {
  const auto t = table_of(cfg);
  Table table{{"p", "q1", "q2", "r1", "r2", "mu_p", "L_p", "n_q1", "n_q2", "m_r1", "m_r2"},
              {{t.p, t.q1, t.q2, t.r1, t.r2, t.mu_p, t.L_p, t.n_q1, t.n_q2, t.m_r1, t.m_r2}}};
  bool ok = true;
  if (cfg.oracle) {
    const double p = t.p;
    const std::vector<std::pair<std::string, std::pair<double, double>>> pairs{
        {"mu_p", {t.mu_p, oracles::mu_quadrature(p)}},
        {"L_p", {t.L_p, oracles::length_quadrature(p)}},
        {"n_q1", {t.n_q1, oracles::norm_U_sspace(p, t.q1)}},
        {"n_q2", {t.n_q2, oracles::norm_U_sspace(p, t.q2)}},
        {"m_r1", {t.m_r1, oracles::norm_U_prime_sspace(p, t.r1)}},
        {"m_r2", {t.m_r2, oracles::norm_U_prime_sspace(p, t.r2)}}};
    for (const auto& [name, values] : pairs) {
      const double dev = std::abs(values.first - values.second) / std::abs(values.second);
      ok = ok && dev <= kOracleTolerance;
      table.columns.push_back(name + "_oracle");
      table.columns.push_back(name + "_dev");
      table.rows[0].push_back(values.second);
      table.rows[0].push_back(dev);
    }
  }
  json results = to_json(table)[0];
  emit(out, cfg, table, results, {{"oracle", cfg.oracle}, {"oracle_pass", ok}}, {});
  return ok ? kOk : kCheckFailed;
}

int cmd_roots(const RunConfig& cfg, std::ostream& out) {
  const double lambda = require_lambda(cfg, "roots");
  const auto setup = power_setup(cfg);
  const auto res = bif::solve_single(setup.spec, setup.table, lambda, setup.window, setup.opts);
  Table table{{"s", "s1", "s2", "t1", "t2", "kind", "residual"}, {}};
  for (const auto& r : res.roots) {
    const auto& q = r.quadruple;
    table.rows.push_back({r.s, q.s1, q.s2, q.t1, q.t2, std::string(bif::to_string(r.kind)), r.residual});
  }
  const std::vector<std::pair<std::string, Cell>> info{
      {"lambda", res.lambda}, {"target", res.target},
      {"s_min", setup.window.s_min}, {"s_max", setup.window.s_max}};
  json results = summary_json(info);
  results["roots"] = to_json(table);
  std::vector<std::string> comments{summary(info), flag_line(res)};
  if (res.eval_failures > 0) comments.push_back("first_failure=" + res.first_failure);
  emit(out, cfg, table, results, solve_flags(res), comments);
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  std::vector<double> grid;
  if (cfg.lambda_min || cfg.lambda_max || cfg.lambda_n) {
    if (!cfg.lambda_min || !cfg.lambda_max || cfg.lambda_n < 1)
      throw ConfigError("a lambda range needs lambda_min, lambda_max and lambda_n >= 1");
    if (cfg.lambda) throw ConfigError("give either lambda or a lambda range, not both");
    if (!(*cfg.lambda_min <= *cfg.lambda_max)) throw ConfigError("lambda_min must not exceed lambda_max");
    grid = bif::lambda_range(*cfg.lambda_min, *cfg.lambda_max, cfg.lambda_n, cfg.spacing == "log");
  } else if (cfg.lambda) {
    grid = {*cfg.lambda};
  } else {
    throw ConfigError("sweep needs lambda_min, lambda_max and lambda_n");
  }
  const auto setup = power_setup(cfg);
  bif::SweepOptions opts;
  opts.solve = setup.opts;
  opts.threads = cfg.threads;
  const auto diagram = bif::sweep(setup.spec, setup.table, grid, setup.window, opts);

  Table rows{{"lambda", "branch_index", "s", "kind"}, {}};
  Table counts{{"lambda", "count", "overflow", "lower_edge", "upper_edge", "eval_failures"}, {}};
  bool any_overflow = false, any_edge = false;
  long long failures = 0;
  for (const auto& res : diagram.results) {
    for (std::size_t i = 0; i < res.roots.size(); ++i)
      rows.rows.push_back({res.lambda, static_cast<long long>(i), res.roots[i].s,
                           std::string(bif::to_string(res.roots[i].kind))});
    counts.rows.push_back({res.lambda, static_cast<long long>(res.roots.size()), res.overflow,
                           res.lower_edge, res.upper_edge, static_cast<long long>(res.eval_failures)});
    any_overflow = any_overflow || res.overflow;
    any_edge = any_edge || res.lower_edge || res.upper_edge;
    failures += res.eval_failures;
  }
  Table thresholds{{"lambda", "count_below", "count_above", "reliable"}, {}};
  for (const auto& th : diagram.thresholds)
    thresholds.rows.push_back({th.lambda, static_cast<long long>(th.count_below),
                               static_cast<long long>(th.count_above), th.reliable});

  const json flags{{"overflow", any_overflow}, {"edge", any_edge}, {"eval_failures", failures}};
  if (cfg.format == "json") {
    json results{{"roots", to_json(rows)},
                 {"counts", to_json(counts)},
                 {"thresholds", to_json(thresholds)},
                 {"s_min", setup.window.s_min},
                 {"s_max", setup.window.s_max}};
    write_json(out, echo(cfg), results, flags);
    return kOk;
  }
  write_csv(out, rows);
  write_comment_table(out, "counts", counts);
  write_comment_table(out, "thresholds", thresholds);
  return kOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const auto grid = timemap::uniform_grid(cfg.grid_n, cfg.delta);
  if (cfg.problem == "exp") {
    const auto spec = exp_setup(cfg);
    const auto sol = expcase::solve_exp(spec, grid, cfg.delta);
    const std::vector<std::pair<std::string, Cell>> info{{"lambda", spec.lambda},
                                                        {"shift", sol.shift}};
    json results = summary_json(info);
    results["profile"] = to_json(profile_table(sol.sample));
    emit(out, cfg, profile_table(sol.sample), results, json::object(), {summary(info)});
    return kOk;
  }
  const double lambda = require_lambda(cfg, "eval");
  const auto setup = power_setup(cfg);
  const auto res = bif::solve_single(setup.spec, setup.table, lambda, setup.window, setup.opts);
  if (static_cast<std::size_t>(cfg.index) >= res.roots.size()) {
    std::ostringstream os;
    os << "root index " << cfg.index << " out of range; ";
    if (res.roots.empty()) os << "no roots at lambda=" << format_number(lambda);
    else {
      os << "available roots:";
      for (std::size_t i = 0; i < res.roots.size(); ++i)
        os << " [" << i << "] s=" << format_number(res.roots[i].s);
    }
    throw ConfigError(os.str());
  }
  const auto& root = res.roots[static_cast<std::size_t>(cfg.index)];
  const auto profile = timemap::make_profile(setup.table.p);
  const auto sample = bif::reconstruct(profile, setup.table, root.s, grid, cfg.delta);
  const std::vector<std::pair<std::string, Cell>> info{
      {"lambda", lambda}, {"index", static_cast<long long>(cfg.index)}, {"s", root.s}};
  json results = summary_json(info);
  results["profile"] = to_json(profile_table(sample));
  emit(out, cfg, profile_table(sample), results, solve_flags(res), {summary(info)});
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  verify::Options opts;
  if (cfg.p) opts.ps = {*cfg.p};
  opts.perturb_norms = cfg.perturb_norms;
  opts.scenario = cfg.scenario;
  opts.asymptotics = cfg.asymptotics;
  const auto report = verify::run(opts);
  Table table{{"check", "measured", "allowed", "status"}, {}};
  for (const auto& c : report.checks)
    table.rows.push_back({c.name, c.measured, c.allowed, std::string(c.pass ? "pass" : "fail")});
  const bool pass = report.pass();
  json results = to_json(table);
  emit(out, cfg, table, results, {{"pass", pass}}, {std::string("pass=") + (pass ? "true" : "false")});
  return pass ? kOk : kCheckFailed;
}

int cmd_exp(const RunConfig& cfg, std::ostream& out) {
  const auto spec = exp_setup(cfg);
  const auto grid = timemap::uniform_grid(cfg.grid_n, cfg.delta);
  const auto sol = expcase::solve_exp(spec, grid, cfg.delta);
  const double residual = expcase::exp_residual(spec, sol);
  const std::vector<std::pair<std::string, Cell>> info{
      {"lambda", spec.lambda}, {"t1", sol.t1},          {"t2", sol.t2},
      {"A", sol.A_value},      {"B", sol.B_value},      {"shift", sol.shift},
      {"profile_shift", sol.profile_shift},             {"residual", residual}};
  json results = summary_json(info);
  results["profile"] = to_json(profile_table(sol.sample));
  emit(out, cfg, profile_table(sol.sample), results, json::object(), {summary(info)});
  return kOk;
}

int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    check_common(cfg);
    if (command == "norms") return cmd_norms(cfg, out);
    if (command == "roots") return cmd_roots(cfg, out);
    if (command == "sweep") return cmd_sweep(cfg, out);
    if (command == "eval") return cmd_eval(cfg, out);
    if (command == "verify") return cmd_verify(cfg, out);
    if (command == "exp") return cmd_exp(cfg, out);
    err << "error: unknown subcommand '" << command << "'\n";
  } catch (const norms::ExponentViolation& e) {
    err << "error: inadmissible exponents\n";
    for (const auto& v : e.report().violations) err << "  violated: " << v << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

} // namespace blowup::cli
