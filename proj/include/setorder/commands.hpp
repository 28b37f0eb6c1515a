#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setorder/report.hpp"

namespace setorder {

/// Exit codes shared by every subcommand.
inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  double tol = kDefaultTol;
  int horizon = 64;
  std::uint64_t seed = 20240611;
  std::string format = "json";  ///< json | table | both
  std::string out;              ///< empty: stdout

  std::string kind = "all";           ///< solve/stability: strong|pareto|geoffroy|relaxed|all
  std::string direction = "both";     ///< stability: external|internal|both
  bool set_level = false;             ///< stability: GEff set-level theorems
  std::optional<Vec> at;              ///< grid point xbar (gamma, levelset, levelset-conv)
  std::string omega;                  ///< set literal (JSON) for levelset
  std::string set_a;                  ///< compare: set literals and cone (JSON)
  std::string set_b;
  std::string cone;
  std::optional<Vec> y;               ///< levelset: L(y) probe
  bool update = false;                ///< repro: rewrite the golden file
  std::string golden_dir;             ///< repro: default <source>/tests/golden
  std::string problems_dir;           ///< repro: default <source>/problems
};

struct CommandResult {
  Json report;
  int exit_code = kExitHolds;
  std::string message;  ///< repro diff summary and similar notes
};

/// Runs one subcommand. Usage and schema problems throw SchemaError (or
/// ParseError); the CLI maps those to exit code 64.
CommandResult run_command(const RunConfig& cfg);

/// The report of a reproducible example, built with fixed schedules.
Json repro_report(const std::string& id, const RunConfig& cfg);

const std::vector<std::string>& repro_ids();

}  // namespace setorder
