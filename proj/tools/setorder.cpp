// Command-line front end. Every subcommand writes one JSON report (or a table
// derived from it) and exits 0/1/2 for holds/fails/inconclusive, 64 on misuse.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "setorder/commands.hpp"
#include "setorder/error.hpp"

namespace {

using namespace setorder;

Vec parse_point(const std::string& s, const char* flag) {
  Vec out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (part.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw SchemaError(std::string(flag) + " expects comma-separated numbers, got '" + s + "'");
    }
  }
  if (out.empty()) throw SchemaError(std::string(flag) + " is empty");
  return out;
}

struct Raw {
  std::string at;
  std::string y;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--tol", cfg.tol, "comparison tolerance")->capture_default_str();
  sub->add_option("--horizon", cfg.horizon, "largest n examined")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "battery seed")->capture_default_str();
  sub->add_option("--format", cfg.format, "json | table | both")->capture_default_str();
  sub->add_option("--out", cfg.out, "write the report here instead of stdout");
}

int emit(const RunConfig& cfg, const CommandResult& res) {
  std::string text;
  if (cfg.format != "table") text += dump_report(res.report);
  if (cfg.format != "json") text += render_table(res.report);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "setorder: cannot write '" << cfg.out << "'\n";
      return kExitUsage;
    }
    out << text;
  }
  if (!res.message.empty()) std::cerr << res.message << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set-order optimization toolkit"};
  app.set_version_flag("--version", SETORDER_VERSION);
  app.require_subcommand(1);
  RunConfig cfg;
  Raw raw;

  auto* compare = app.add_subcommand("compare", "compare two sets under the four preorders");
  compare->add_option("file", cfg.inputs, "JSON file with cone, a and b");
  compare->add_option("--a", cfg.set_a, "set literal (JSON)");
  compare->add_option("--b", cfg.set_b, "set literal (JSON)");
  compare->add_option("--cone", cfg.cone, "cone literal (JSON)");

  auto* solve = app.add_subcommand("solve", "minimal solutions on the domain grid");
  solve->add_option("problem", cfg.inputs)->required();
  solve->add_option("--kind", cfg.kind, "strong | pareto | geoffroy | relaxed | all");

  auto* levelset = app.add_subcommand("levelset", "strong and classical level sets");
  levelset->add_option("problem", cfg.inputs)->required();
  levelset->add_option("--omega", cfg.omega, "set literal (JSON)");
  levelset->add_option("--at", raw.at, "use Omega = F(x), x as comma-separated numbers");
  levelset->add_option("--y", raw.y, "probe the set L(y)");

  auto* gamma = app.add_subcommand("gamma", "(sequential) Gamma-cone convergence");
  gamma->add_option("problem", cfg.inputs)->required();
  gamma->add_option("--at", raw.at, "single point xbar (default: every grid point)");

  auto* pk = app.add_subcommand("pk", "Painleve-Kuratowski limits of the domains");
  pk->add_option("problem", cfg.inputs)->required();

  auto* stability = app.add_subcommand("stability", "stability theorems on a family");
  stability->add_option("problem", cfg.inputs)->required();
  stability->add_option("--kind", cfg.kind, "relaxed | geoffroy | all");
  stability->add_option("--direction", cfg.direction, "external | internal | both");
  stability->add_flag("--set-level", cfg.set_level, "Geoffroy set-level theorems");

  auto* lconv = app.add_subcommand("levelset-conv", "convergence of strong level sets");
  lconv->add_option("problem", cfg.inputs)->required();
  lconv->add_option("--at", raw.at, "Omega = F(x), Omega_n = F_n(x)");
  lconv->add_option("--omega", cfg.omega, "constant Omega (JSON literal)");

  auto* repro = app.add_subcommand("repro", "reproduce a worked example against its golden file");
  repro->add_option("id", cfg.inputs, "geff-example | gamma-cos | sop-sin-stability")->required();
  repro->add_flag("--update", cfg.update, "rewrite the golden file");
  repro->add_option("--golden-dir", cfg.golden_dir);
  repro->add_option("--problems-dir", cfg.problems_dir);

  for (auto* sub : {compare, solve, levelset, gamma, pk, stability, lconv, repro})
    add_common(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (!raw.at.empty()) cfg.at = parse_point(raw.at, "--at");
    if (!raw.y.empty()) cfg.y = parse_point(raw.y, "--y");
    return emit(cfg, run_command(cfg));
  } catch (const SchemaError& e) {
    std::cerr << "setorder: schema error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "setorder: schema error: " << e.what() << "\n";
  } catch (const Error& e) {
    std::cerr << "setorder: " << e.what() << "\n";
  }
  return kExitUsage;
}
