#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace blowup::cli {

namespace {

using nlohmann::json;

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("config key '" + key + "' must be true or false");
  return v.get<bool>();
}

double parse_double(const std::string& text, const std::string& what) {
  double value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError("cannot read '" + text + "' as " + what);
  return value;
}

} // namespace

void apply_json(RunConfig& cfg, const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "problem") cfg.problem = as_string(v, key);
    else if (key == "scenario") cfg.scenario = as_string(v, key);
    else if (key == "p") cfg.p = as_number(v, key);
    else if (key == "q1") cfg.q1 = as_number(v, key);
    else if (key == "q2") cfg.q2 = as_number(v, key);
    else if (key == "r1") cfg.r1 = as_number(v, key);
    else if (key == "r2") cfg.r2 = as_number(v, key);
    else if (key == "A") cfg.A = as_string(v, key);
    else if (key == "B") cfg.B = as_string(v, key);
    else if (key == "params") {
      if (!v.is_object()) throw ConfigError("config key 'params' must be an object");
      for (const auto& [name, value] : v.items()) cfg.params[name] = as_number(value, "params." + name);
    } else if (key == "lambda") cfg.lambda = as_number(v, key);
    else if (key == "lambda_min") cfg.lambda_min = as_number(v, key);
    else if (key == "lambda_max") cfg.lambda_max = as_number(v, key);
    else if (key == "lambda_n") cfg.lambda_n = as_int(v, key);
    else if (key == "spacing") cfg.spacing = as_string(v, key);
    else if (key == "s_min") cfg.s_min = as_number(v, key);
    else if (key == "s_max") cfg.s_max = as_number(v, key);
    else if (key == "count_cap") cfg.count_cap = as_int(v, key);
    else if (key == "grid_points") cfg.grid_points = as_int(v, key);
    else if (key == "grid_n") cfg.grid_n = as_int(v, key);
    else if (key == "delta") cfg.delta = as_number(v, key);
    else if (key == "index") cfg.index = as_int(v, key);
    else if (key == "format") cfg.format = as_string(v, key);
    else if (key == "output") cfg.output = as_string(v, key);
    else if (key == "oracle") cfg.oracle = as_bool(v, key);
    else if (key == "perturb_norms") cfg.perturb_norms = as_number(v, key);
    else if (key == "asymptotics") cfg.asymptotics = as_bool(v, key);
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

void apply_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  apply_json(cfg, doc);
}

void check_common(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json")
    throw ConfigError("format must be csv or json, got '" + cfg.format + "'");
  if (cfg.problem != "power" && cfg.problem != "exp")
    throw ConfigError("problem must be power or exp, got '" + cfg.problem + "'");
  if (cfg.spacing != "log" && cfg.spacing != "linear")
    throw ConfigError("spacing must be log or linear, got '" + cfg.spacing + "'");
  auto positive = [](const std::optional<double>& v, const char* name) {
    if (v && !(*v > 0.0 && std::isfinite(*v)))
      throw ConfigError(std::string(name) + " must be positive and finite");
  };
  positive(cfg.lambda, "lambda");
  positive(cfg.lambda_min, "lambda_min");
  positive(cfg.lambda_max, "lambda_max");
  positive(cfg.s_min, "s_min");
  positive(cfg.s_max, "s_max");
  if (cfg.count_cap < 1) throw ConfigError("count_cap must be at least 1");
  if (cfg.grid_points < 16) throw ConfigError("grid_points must be at least 16");
  if (cfg.grid_n < 2) throw ConfigError("grid_n must be at least 2");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (cfg.index < 0) throw ConfigError("index must be non-negative");
}

nlohmann::json echo(const RunConfig& cfg) {
  json out;
  out["problem"] = cfg.problem;
  if (!cfg.scenario.empty()) out["scenario"] = cfg.scenario;
  out["p"] = cfg.p_value();
  out["q1"] = cfg.q1;
  out["q2"] = cfg.q2;
  out["r1"] = cfg.r1;
  out["r2"] = cfg.r2;
  if (!cfg.A.empty()) out["A"] = cfg.A;
  if (!cfg.B.empty()) out["B"] = cfg.B;
  json params = json::object();
  for (const auto& [k, v] : cfg.params) params[k] = v;
  out["params"] = params;
  if (cfg.lambda) out["lambda"] = *cfg.lambda;
  if (cfg.lambda_min) out["lambda_min"] = *cfg.lambda_min;
  if (cfg.lambda_max) out["lambda_max"] = *cfg.lambda_max;
  if (cfg.lambda_n) out["lambda_n"] = cfg.lambda_n;
  out["spacing"] = cfg.spacing;
  if (cfg.s_min) out["s_min"] = *cfg.s_min;
  if (cfg.s_max) out["s_max"] = *cfg.s_max;
  out["count_cap"] = cfg.count_cap;
  out["grid_points"] = cfg.grid_points;
  out["grid_n"] = cfg.grid_n;
  out["delta"] = cfg.delta;
  out["index"] = cfg.index;
  out["format"] = cfg.format;
  return out;
}

unsigned threads_from_env(const char* value) {
  if (value == nullptr || *value == '\0') return 0;
  const std::string text(value);
  unsigned n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("BLOWUP_THREADS must be a non-negative integer, got '" + text + "'");
  return n;
}

std::pair<std::string, double> parse_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("parameter '" + text + "' must look like name=value");
  return {text.substr(0, eq), parse_double(text.substr(eq + 1), "a parameter value")};
}

} // namespace blowup::cli
