#include "setorder/order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "setorder/error.hpp"

namespace setorder {
namespace {

void check_dims(const SetRep& a, const SetRep& b, const OrderCtx& ctx) {
  if (a.dim() != ctx.cone.dim()) throw DimensionMismatch(ctx.cone.dim(), a.dim());
  if (b.dim() != ctx.cone.dim()) throw DimensionMismatch(ctx.cone.dim(), b.dim());
}

std::vector<Vec> lower_corners(const SetRep& s) {
  if (s.is_points()) return s.points().points();
  std::vector<Vec> out;
  out.reserve(s.boxes().boxes().size());
  for (const auto& b : s.boxes().boxes()) out.push_back(b.lower_corner());
  return out;
}

}  // namespace

std::vector<double> default_eps_schedule() {
  std::vector<double> s;
  for (int k = 0; k <= 20; ++k) s.push_back(std::ldexp(1.0, -k));
  return s;
}

OrderCtx::OrderCtx(Cone c, double tolerance, std::vector<double> schedule)
    : cone(std::move(c)), tol(tolerance), eps_schedule(std::move(schedule)) {
  if (!(tol >= 0)) throw PreconditionError("tolerance must be nonnegative");
  if (eps_schedule.empty())
    throw PreconditionError("eps schedule must be nonempty");
  for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
    if (!(eps_schedule[k] > 0))
      throw PreconditionError("eps schedule entries must be positive");
    if (k > 0 && !(eps_schedule[k] < eps_schedule[k - 1]))
      throw PreconditionError("eps schedule must be strictly decreasing");
  }
  if (!(eps_schedule.back() < 1e-6))
    throw PreconditionError("eps schedule must decrease below 1e-6");
}

Vec OrderCtx::eps(double t) const {
  Vec v = u();
  for (double& x : v) x *= t;
  return v;
}

bool lower_le(const SetRep& a, const SetRep& b, const OrderCtx& ctx) {
  check_dims(a, b, ctx);
  return contains_set(upset(a, ctx.cone, /*closed=*/false), b, ctx.tol);
}

bool large_le(const SetRep& a, const SetRep& b, const OrderCtx& ctx) {
  check_dims(a, b, ctx);
  return contains_set(upset(a, ctx.cone, /*closed=*/true), b, ctx.tol);
}

bool strict_lt(const SetRep& a, const SetRep& b, const OrderCtx& ctx) {
  check_dims(a, b, ctx);
  return contains_set_strict(upset(a, ctx.cone, /*closed=*/false), b, ctx.tol);
}

bool strict_lt_by_search(const SetRep& a, const SetRep& b,
                         const OrderCtx& ctx) {
  check_dims(a, b, ctx);
  for (double t : ctx.eps_schedule)
    if (lower_le(translate(a, ctx.eps(t)), b, ctx)) return true;
  return false;
}

bool equiv(const SetRep& a, const SetRep& b, const OrderCtx& ctx) {
  return large_le(a, b, ctx) && large_le(b, a, ctx);
}

Verdict not_proper_witness(const SetRep& a, const OrderCtx& ctx) {
  const Verdict proper = is_c_proper(a, ctx.cone);
  if (proper.is_inconclusive())
    return Verdict::inconclusive("C-properness undecided", to_json(a));
  bool self_strict = false;
  try {
    self_strict = strict_lt(a, a, ctx);
  } catch (const Unsupported& e) {
    return Verdict::inconclusive(e.what(), to_json(a));
  }
  Json ev{{"set", to_json(a)},
          {"c_proper", proper.is_holds()},
          {"self_strict", self_strict}};
  if (proper.is_holds() != self_strict)
    return Verdict::holds("C-proper iff not (A strictly below A)", ev);
  return Verdict::fails("properness and self-strictness disagree", ev);
}

double ray_deficit(const SetRep& a, const SetRep& b, const OrderCtx& ctx) {
  check_dims(a, b, ctx);
  const std::size_t d = ctx.cone.dim();
  const Vec& u = ctx.u();
  const auto ca = lower_corners(a);
  const auto cb = lower_corners(b);
  double worst = -std::numeric_limits<double>::infinity();

  if (ctx.cone.kind() == ConeKind::Orthant) {
    for (const auto& l : cb) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : ca) {
        double need = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < d; ++i)
          need = std::max(need, (c[i] - l[i]) / u[i]);
        best = std::min(best, need);
      }
      worst = std::max(worst, best);
    }
    return worst;
  }

  if (!a.is_points() || !b.is_points())
    throw Unsupported("ray deficit under a general cone needs point clouds");
  std::vector<double> gu;
  for (const auto& g : ctx.cone.rows()) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += g[i] * u[i];
    gu.push_back(s);
  }
  for (const auto& bp : cb) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ap : ca) {
      double need = -std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < gu.size(); ++r) {
        const auto& g = ctx.cone.rows()[r];
        double m = 0.0;
        for (std::size_t i = 0; i < d; ++i) m += g[i] * (bp[i] - ap[i]);
        need = std::max(need, -m / gu[r]);
      }
      best = std::min(best, need);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace setorder
