#pragma once

#include "blowup/errors.hpp"
#include "blowup/exprdsl.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace blowup::cli {

/// Bad configuration or usage; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Everything a subcommand needs. JSON keys and command-line flags share the
/// field names below.
struct RunConfig {
  std::string problem = "power";  // power | exp
  std::string scenario;           // empty: A and B describe the problem
  std::optional<double> p;        // defaults to 3 where needed
  double q1 = 0.5, q2 = 0.5, r1 = 0.25, r2 = 0.25;
  std::string A, B;
  expr::ParamBinding params;

  std::optional<double> lambda;
  std::optional<double> lambda_min, lambda_max;
  int lambda_n = 0;
  std::string spacing = "log";  // log | linear

  std::optional<double> s_min, s_max;
  int count_cap = 64;
  int grid_points = 4096;

  int grid_n = 201;
  double delta = 1e-3;
  int index = 0;

  std::string format = "csv";  // csv | json
  std::string output;          // empty: standard output

  bool oracle = false;
  double perturb_norms = 0.0;
  bool asymptotics = false;

  unsigned threads = 0;  // from BLOWUP_THREADS; 0 = hardware concurrency

  double p_value() const { return p.value_or(3.0); }
};

/// Applies the keys of `doc` on top of `cfg`. Unknown keys and wrongly typed
/// values raise ConfigError.
void apply_json(RunConfig& cfg, const nlohmann::json& doc);

/// Reads and applies a JSON config file.
void apply_file(RunConfig& cfg, const std::string& path);

/// Field-level checks shared by all subcommands (formats, positivity, ...).
void check_common(const RunConfig& cfg);

/// The effective configuration as JSON, for `config_echo`.
nlohmann::json echo(const RunConfig& cfg);

/// Parses BLOWUP_THREADS; null or empty gives 0 (auto).
unsigned threads_from_env(const char* value);

/// "name=value" -> binding entry.
std::pair<std::string, double> parse_param(const std::string& text);

} // namespace blowup::cli
