#include "setorder/report.hpp"

#include <sstream>

namespace setorder {
namespace {

constexpr std::size_t kMaxArrayRows = 12;

bool is_flat_numbers(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!e.is_number()) return false;
  return true;
}

void render(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render(v, path.empty() ? k : path + "." + k, out);
    return;
  }
  if (j.is_array() && !is_flat_numbers(j)) {
    std::size_t i = 0;
    for (const auto& e : j) {
      if (i == kMaxArrayRows) {
        out << path << "[...]: " << (j.size() - i) << " more\n";
        break;
      }
      render(e, path + "[" + std::to_string(i) + "]", out);
      ++i;
    }
    if (j.empty()) out << path << ": []\n";
    return;
  }
  out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace

Json grid_json(const Domain& d) {
  if (!d.is_grid()) return Json{{"points", d.grid().size()}};
  Json steps = Json::array();
  for (const auto& w : d.window_list()) steps.push_back(w.step);
  return Json{{"step", steps}, {"points", d.grid().size()}, {"truncated", d.truncated()}};
}

Json header_json(const ReportHeader& h) {
  return Json{{"tool", "setorder"},
              {"version", SETORDER_VERSION},
              {"command", h.command},
              {"seed", h.seed},
              {"tol", h.tol},
              {"horizon", h.horizon},
              {"grid", h.grid},
              {"conventions",
               {{"for_all_x", "quantified over the domain grid"},
                {"eventually", "all n in [horizon/2, horizon], or a converging excess"},
                {"infinitely_often", "at least a quarter of [horizon/2, horizon]"},
                {"sequences", "sampled battery; Holds is falsification-only"}}}};
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

std::string render_table(const Json& report) {
  std::ostringstream out;
  render(report, "", out);
  return out.str();
}

}  // namespace setorder
