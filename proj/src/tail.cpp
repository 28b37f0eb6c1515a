#include "setorder/tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "setorder/error.hpp"

namespace setorder {
namespace {

constexpr double kInfExcess = std::numeric_limits<double>::infinity();

struct Scan {
  int violations = 0;
  int first = -1;
  double t1 = 0.0;
  double t2 = 0.0;
};

Scan scan(const std::vector<double>& v, double bound, bool strict, double tol,
          const TailRule& rule) {
  if (v.size() != static_cast<std::size_t>(rule.horizon) + 1)
    throw PreconditionError("tail rule needs horizon + 1 values");
  Scan s;
  for (int n = rule.lo(); n <= rule.horizon; ++n) {
    const double x = v[static_cast<std::size_t>(n)];
    // excess is measured from the threshold actually applied, so an exact
    // tie under a strict comparison counts as a positive violation
    const double threshold = strict ? bound - tol : bound + tol;
    const bool ok = strict ? x < threshold : x <= threshold;
    if (!ok) {
      ++s.violations;
      if (s.first < 0) s.first = n;
    }
    double excess = std::isnan(x) ? kInfExcess : std::max(x - threshold, 0.0);
    if (n < rule.mid())
      s.t1 = std::max(s.t1, excess);
    else
      s.t2 = std::max(s.t2, excess);
  }
  return s;
}

}  // namespace

Json TailResult::to_json() const {
  Json j{{"status", to_string(status)},
         {"converging", converging},
         {"violations", violations},
         {"t1_max", t1_max},
         {"t2_max", t2_max}};
  if (first_violation >= 0) j["first_violation"] = first_violation;
  return j;
}

TailResult eventually(const std::vector<double>& v, double bound, bool strict,
                      double tol, const TailRule& rule) {
  const Scan s = scan(v, bound, strict, tol, rule);
  TailResult r;
  r.violations = s.violations;
  r.first_violation = s.first;
  r.t1_max = s.t1;
  r.t2_max = s.t2;
  if (s.violations == 0) {
    r.status = Status::Holds;
  } else if (std::isfinite(s.t1) && s.t1 > 0 && s.t2 <= rule.rho * s.t1) {
    r.status = Status::Holds;
    r.converging = true;
  } else if (s.violations >= rule.quarter()) {
    r.status = Status::Fails;
  } else {
    r.status = Status::Inconclusive;
  }
  return r;
}

TailResult infinitely_often(const std::vector<double>& v, double bound,
                            bool strict, double tol, const TailRule& rule) {
  const Scan s = scan(v, bound, strict, tol, rule);
  TailResult r;
  r.violations = s.violations;
  r.first_violation = s.first;
  r.t1_max = s.t1;
  r.t2_max = s.t2;
  const int satisfied = rule.upper_count() - s.violations;
  if (satisfied >= rule.quarter()) {
    r.status = Status::Holds;
  } else if (std::isfinite(s.t1) && s.t1 > 0 && s.t2 <= rule.rho * s.t1) {
    r.status = Status::Holds;
    r.converging = true;
  } else if (satisfied == 0) {
    r.status = Status::Fails;
  } else {
    r.status = Status::Inconclusive;
  }
  return r;
}

Status aggregate(const std::vector<Status>& parts) {
  Status s = Status::Holds;
  for (Status p : parts) s = combine(s, p);
  return s;
}

}  // namespace setorder
