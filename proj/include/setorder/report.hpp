#pragma once

#include <string>

#include "setorder/gamma.hpp"
#include "setorder/problem.hpp"
#include "setorder/verdict.hpp"

namespace setorder {

/// Run parameters embedded in every report.
struct ReportHeader {
  std::string command;
  double tol = kDefaultTol;
  int horizon = 64;
  std::uint64_t seed = 0;
  Json grid = Json::object();  ///< grid step(s) of the problem domain
};

/// Grid description of a domain: steps and windows, or the point count.
Json grid_json(const Domain& d);

/// {tool, version, command, seed, tol, horizon, grid, conventions}.
Json header_json(const ReportHeader& h);

/// Deterministic serialization (2-space indent, trailing newline).
std::string dump_report(const Json& report);

/// Plain-text table derived from the JSON report: one "path: value" row per
/// scalar, long arrays abbreviated.
std::string render_table(const Json& report);

}  // namespace setorder
