#pragma once

#include <vector>

#include "setorder/cone.hpp"
#include "setorder/setrep.hpp"
#include "setorder/verdict.hpp"

namespace setorder {

/// 2^0, 2^-1, ..., 2^-20.
std::vector<double> default_eps_schedule();

/// Shared context of every order query. Quantifiers over int(C) are
/// instantiated along the ray t * u, t in `eps_schedule`, u the cone's
/// interior direction.
struct OrderCtx {
  explicit OrderCtx(Cone c, double tolerance = kDefaultTol,
                    std::vector<double> schedule = default_eps_schedule());

  Cone cone;
  double tol;
  std::vector<double> eps_schedule;  ///< strictly decreasing, last < 1e-6

  const Vec& u() const { return cone.interior_direction(); }
  /// t * u
  Vec eps(double t) const;
};

/// A lower-preceq B: B subset of A + C.
bool lower_le(const SetRep& a, const SetRep& b, const OrderCtx& ctx);
/// A large-preceq B: B subset of cl(A + C).
bool large_le(const SetRep& a, const SetRep& b, const OrderCtx& ctx);
/// A strictly below B: B subset of A + eps + C for some eps in int(C).
/// Decided by pointwise strict domination of every point or lower corner.
bool strict_lt(const SetRep& a, const SetRep& b, const OrderCtx& ctx);
/// The same relation decided by searching eps = t_k * u over the schedule.
bool strict_lt_by_search(const SetRep& a, const SetRep& b, const OrderCtx& ctx);
/// large_le both ways.
bool equiv(const SetRep& a, const SetRep& b, const OrderCtx& ctx);

/// Cross-checks C-properness against not(A strictly below A). Holds when
/// both readings agree; Fails with the set when they disagree.
Verdict not_proper_witness(const SetRep& a, const OrderCtx& ctx);

/// inf { t : A - t u large-preceq B }. May be negative.
///
/// A - t u large-preceq B iff t >= deficit, and A - t u strictly below B iff
/// t > deficit. Openness never matters for either relation.
double ray_deficit(const SetRep& a, const SetRep& b, const OrderCtx& ctx);

}  // namespace setorder
