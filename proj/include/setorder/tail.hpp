#pragma once

#include <vector>

#include "setorder/verdict.hpp"

namespace setorder {

/// Finite-horizon stand-ins for "eventually" and "infinitely often".
///
/// Indices run over n = 0..horizon. The upper half U = [N/2, N]; its first
/// part T1 = [N/2, 3N/4) and second part T2 = [3N/4, N].
///
/// eventually: Holds when the property holds on all of U. It also Holds,
/// flagged `converging`, when the clamped violation max(v_n - threshold, 0)
/// (threshold = bound + tol, or bound - tol when strict) has a positive maximum on T1 and its maximum on T2 is at most rho times that.
/// Otherwise Fails when at least floor(|U| / 4) indices of U violate it, and
/// is Inconclusive below that count.
///
/// infinitely often: Holds when at least floor(|U| / 4) indices of U satisfy
/// the property or the violation is converging; Fails when none do.
struct TailRule {
  int horizon = 64;
  double rho = 0.9;

  int lo() const { return horizon / 2; }
  int mid() const { return (3 * horizon) / 4; }
  int upper_count() const { return horizon - lo() + 1; }
  int quarter() const { return upper_count() / 4; }
};

struct TailResult {
  Status status = Status::Inconclusive;
  bool converging = false;
  int violations = 0;   ///< indices of U where the property fails
  int first_violation = -1;
  double t1_max = 0.0;  ///< largest clamped violation on T1
  double t2_max = 0.0;

  Json to_json() const;
};

/// Property at n: v[n] <= bound + tol (or v[n] < bound - tol when strict).
/// `v` must have horizon + 1 entries.
TailResult eventually(const std::vector<double>& v, double bound, bool strict,
                      double tol, const TailRule& rule);
TailResult infinitely_often(const std::vector<double>& v, double bound,
                            bool strict, double tol, const TailRule& rule);

/// Aggregation over an eps schedule or a family of sequences.
Status aggregate(const std::vector<Status>& parts);

}  // namespace setorder
