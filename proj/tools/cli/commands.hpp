#pragma once

#include "cli/config.hpp"

#include <ostream>
#include <string>

namespace blowup::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one subcommand (norms, roots, sweep, eval, verify, exp), writing data
/// to `out` and diagnostics to `err`. Library and config errors are reported
/// on `err` and turned into kUsage.
int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

// The individual commands; they throw on bad input.
int cmd_norms(const RunConfig& cfg, std::ostream& out);
int cmd_roots(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_eval(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_exp(const RunConfig& cfg, std::ostream& out);

/// Relative deviation above which `norms --oracle` exits with kCheckFailed.
inline constexpr double kOracleTolerance = 1e-7;

} // namespace blowup::cli
