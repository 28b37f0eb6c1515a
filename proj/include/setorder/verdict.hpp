#pragma once

#include <string>
#include <utility>

#include <json.hpp>

namespace setorder {

using Json = nlohmann::json;

enum class Status { Holds, Fails, Inconclusive };

/// Outcome of every quantified or sampled check.
///
/// `evidence` carries the certificate (Holds), the counterexample (Fails) or
/// diagnostic data (Inconclusive). Sampled verdicts are falsification-only:
/// a sampled Holds means no counterexample was found by the recorded battery.
struct Verdict {
  Status status = Status::Inconclusive;
  bool sampled = false;
  std::string reason;
  Json evidence = Json::object();

  static Verdict holds(std::string reason, Json evidence = Json::object(),
                       bool sampled = false) {
    return {Status::Holds, sampled, std::move(reason), std::move(evidence)};
  }
  static Verdict fails(std::string reason, Json evidence = Json::object(),
                       bool sampled = false) {
    return {Status::Fails, sampled, std::move(reason), std::move(evidence)};
  }
  static Verdict inconclusive(std::string reason,
                              Json evidence = Json::object(),
                              bool sampled = false) {
    return {Status::Inconclusive, sampled, std::move(reason),
            std::move(evidence)};
  }

  bool is_holds() const { return status == Status::Holds; }
  bool is_fails() const { return status == Status::Fails; }
  bool is_inconclusive() const { return status == Status::Inconclusive; }
};

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Holds:
      return "holds";
    case Status::Fails:
      return "fails";
    case Status::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

inline Json to_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["tag"] = v.sampled ? "sampled" : "exact";
  j["reason"] = v.reason;
  const char* key = v.is_holds()   ? "certificate"
                    : v.is_fails() ? "counterexample"
                                   : "diagnostics";
  j[key] = v.evidence;
  return j;
}

/// Conjunction of verdicts: any Fails wins, then any Inconclusive.
inline Status combine(Status a, Status b) {
  if (a == Status::Fails || b == Status::Fails) return Status::Fails;
  if (a == Status::Inconclusive || b == Status::Inconclusive)
    return Status::Inconclusive;
  return Status::Holds;
}

}  // namespace setorder
