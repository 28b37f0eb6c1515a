#pragma once

#include <functional>
#include <vector>

#include "setorder/cone.hpp"
#include "setorder/problem.hpp"
#include "setorder/tail.hpp"
#include "setorder/verdict.hpp"

namespace setorder {

/// tol(n) = base + decay / (n + 1): the distance at which a sampled point
/// counts as reached at index n.
struct TolSchedule {
  double base = 1e-9;
  double decay = 1.0;

  double at(long long n) const { return base + decay / static_cast<double>(n + 1); }
  Json to_json() const { return Json{{"base", base}, {"decay", decay}}; }
};

using PointSeq = std::vector<std::vector<Vec>>;  ///< A_n for n = 0..horizon

/// Painleve-Kuratowski limits of A_n estimated on a candidate set.
///
/// li: candidates within tol(n) of A_n for every n of the upper half.
/// ls: candidates within tol(n) of A_n on at least a quarter of it.
/// When a target is given, `upper` judges Ls subset of target and `lower`
/// judges target subset of Li.
struct PKReport {
  int horizon = 0;
  TolSchedule tol;
  std::vector<std::size_t> li;  ///< indices into the candidates
  std::vector<std::size_t> ls;
  Verdict upper;
  Verdict lower;

  Json to_json(const std::vector<Vec>& candidates) const;
};

/// Distance from x to a finite set; +inf for the empty set.
double set_distance(VecView x, const std::vector<Vec>& set);

/// Throws PreconditionError on an empty A_n or a horizon below 8.
PKReport pk_limits(const PointSeq& seq, const std::vector<Vec>& candidates,
                   const TailRule& rule, const TolSchedule& tol,
                   const std::vector<Vec>* target = nullptr);

/// Distance to a target, either a finite set or a continuous region.
using TargetDistance = std::function<double(VecView)>;

/// Ls(A_n) subset of target through the excess sup_{a in A_n} dist(a, target)
/// measured against tol(n) with the eventually rule. Empty A_n contribute
/// nothing.
Verdict upper_pk_verdict(const PointSeq& seq, const TargetDistance& dist,
                         const TailRule& rule, const TolSchedule& tol);
/// target subset of Li(A_n) through the gap max_t dist(t, A_n).
Verdict lower_pk_verdict(const PointSeq& seq, const std::vector<Vec>& target,
                         const TailRule& rule, const TolSchedule& tol);

/// Distance from x to a domain: to its window box (exact) or point list.
double domain_distance(const Domain& d, VecView x);

/// ({D_n}, D) is a Kuratowski pair, decided through uniform boundedness of
/// the tail domains plus Ls(D_n) subset of D.
Verdict kuratowski_pair(const std::function<const Domain&(long long)>& domain_at,
                        const Domain& d, const TailRule& rule,
                        const TolSchedule& tol);

}  // namespace setorder
