#include "cli/commands.hpp"
#include "cli/config.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

using blowup::cli::RunConfig;

// Registers flags on one subcommand and remembers how to copy each given
// flag into a RunConfig, so flags override the config file field by field.
class Binder {
public:
  explicit Binder(CLI::App* app) : app_(app) {}

  template <class T, class Set>
  void value(const std::string& names, Set set, const std::string& help) {
    auto holder = std::make_shared<T>();
    CLI::Option* opt = app_->add_option(names, *holder, help);
    setters_.push_back({opt, [holder, set](RunConfig& c) { set(c, *holder); }});
  }

  template <class Set>
  void flag(const std::string& names, Set set, const std::string& help) {
    CLI::Option* opt = app_->add_flag(names, help);
    setters_.push_back({opt, [set](RunConfig& c) { set(c); }});
  }

  void apply(RunConfig& cfg) const {
    for (const auto& [opt, set] : setters_)
      if (opt->count() > 0) set(cfg);
  }

  CLI::App* app() const { return app_; }

private:
  CLI::App* app_;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> setters_;
};

void add_common(Binder& b) {
  b.value<std::string>("--problem", [](RunConfig& c, const std::string& v) { c.problem = v; },
                       "power | exp");
  b.value<std::string>("--scenario", [](RunConfig& c, const std::string& v) { c.scenario = v; },
                       "cor1 | cor2 | cor3 | cor4");
  b.value<double>("--p", [](RunConfig& c, double v) { c.p = v; }, "nonlinearity exponent");
  b.value<double>("--q1", [](RunConfig& c, double v) { c.q1 = v; }, "L^q1 exponent");
  b.value<double>("--q2", [](RunConfig& c, double v) { c.q2 = v; }, "L^q2 exponent");
  b.value<double>("--r1", [](RunConfig& c, double v) { c.r1 = v; }, "L^r1 exponent (derivative)");
  b.value<double>("--r2", [](RunConfig& c, double v) { c.r2 = v; }, "L^r2 exponent (derivative)");
  b.value<std::string>("--A", [](RunConfig& c, const std::string& v) { c.A = v; },
                       "coefficient A(s, t)");
  b.value<std::string>("--B", [](RunConfig& c, const std::string& v) { c.B = v; },
                       "coefficient B(s, t)");
  b.value<std::vector<std::string>>(
      "--params,--param",
      [](RunConfig& c, const std::vector<std::string>& v) {
        for (const auto& item : v) {
          auto [name, value] = blowup::cli::parse_param(item);
          c.params.insert_or_assign(name, value);
        }
      },
      "coefficient parameter name=value (repeatable)");
  b.value<double>("--lambda", [](RunConfig& c, double v) { c.lambda = v; }, "bifurcation parameter");
  b.value<double>("--lambda_min,--lambda-min", [](RunConfig& c, double v) { c.lambda_min = v; },
                  "sweep start");
  b.value<double>("--lambda_max,--lambda-max", [](RunConfig& c, double v) { c.lambda_max = v; },
                  "sweep end");
  b.value<int>("--lambda_n,--lambda-n", [](RunConfig& c, int v) { c.lambda_n = v; },
               "number of sweep values");
  b.value<std::string>("--spacing", [](RunConfig& c, const std::string& v) { c.spacing = v; },
                       "log | linear");
  b.value<double>("--s_min,--s-min", [](RunConfig& c, double v) { c.s_min = v; },
                  "window lower end for s = ||u||_q1");
  b.value<double>("--s_max,--s-max", [](RunConfig& c, double v) { c.s_max = v; },
                  "window upper end");
  b.value<int>("--count_cap,--count-cap", [](RunConfig& c, int v) { c.count_cap = v; },
               "maximum roots reported per lambda");
  b.value<int>("--grid_points,--grid-points", [](RunConfig& c, int v) { c.grid_points = v; },
               "scan points per solve");
  b.value<int>("--grid_n,--grid-n", [](RunConfig& c, int v) { c.grid_n = v; },
               "profile sample points");
  b.value<double>("--delta", [](RunConfig& c, double v) { c.delta = v; },
                  "profile grid stops at +-(1 - delta)");
  b.value<int>("--index", [](RunConfig& c, int v) { c.index = v; }, "root selector for eval");
  b.value<std::string>("--format", [](RunConfig& c, const std::string& v) { c.format = v; },
                       "csv | json");
  b.value<std::string>("--output,-o", [](RunConfig& c, const std::string& v) { c.output = v; },
                       "output file (default: standard output)");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bifurcation diagrams for nonlocal boundary blow-up problems"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"norms", "profile constants and closed-form norms"},
      {"roots", "all solutions at one lambda"},
      {"sweep", "bifurcation diagram over a lambda range"},
      {"eval", "sample one solution on a grid"},
      {"verify", "run the oracle suite"},
      {"exp", "solve the exponential problem"},
  };

  std::string config_path;
  std::vector<std::unique_ptr<Binder>> binders;
  for (const auto& s : subs) {
    auto binder = std::make_unique<Binder>(app.add_subcommand(s.name, s.help));
    binder->app()->add_option("--config", config_path, "JSON config file");
    add_common(*binder);
    const std::string name = s.name;
    if (name == "norms")
      binder->flag("--oracle", [](RunConfig& c) { c.oracle = true; },
                   "add quadrature values and relative deviations");
    if (name == "verify") {
      binder->value<double>("--perturb_norms,--perturb-norms",
                            [](RunConfig& c, double v) { c.perturb_norms = v; },
                            "inject a relative error into the closed-form norms");
      binder->flag("--asymptotics", [](RunConfig& c) { c.asymptotics = true; },
                   "run only the large-lambda cor4 trend checks");
    }
    binders.push_back(std::move(binder));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : blowup::cli::kUsage;
  }

  const Binder* chosen = nullptr;
  for (const auto& b : binders)
    if (b->app()->parsed()) chosen = b.get();

  RunConfig cfg;
  try {
    cfg.threads = blowup::cli::threads_from_env(std::getenv("BLOWUP_THREADS"));
    if (!config_path.empty()) blowup::cli::apply_file(cfg, config_path);
    chosen->apply(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return blowup::cli::kUsage;
  }

  // Buffer so a failing run leaves no partial output file.
  std::ostringstream out;
  const int code = blowup::cli::run(chosen->app()->get_name(), cfg, out, std::cerr);
  if (code == blowup::cli::kUsage) return code;
  if (cfg.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!(file << out.str())) {
      std::cerr << "error: cannot write '" << cfg.output << "'\n";
      return blowup::cli::kUsage;
    }
  }
  return code;
}
