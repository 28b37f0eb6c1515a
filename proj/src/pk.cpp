#include "setorder/pk.hpp"

#include <algorithm>
#include <cmath>

#include "setorder/battery.hpp"
#include "setorder/error.hpp"

namespace setorder {
namespace {

void check_length(std::size_t size, const TailRule& rule) {
  if (rule.horizon < 8) throw PreconditionError("horizon must be at least 8");
  if (size != static_cast<std::size_t>(rule.horizon) + 1)
    throw PreconditionError("sequence needs horizon + 1 sets");
}

Json points_json(const std::vector<Vec>& pts, const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (std::size_t i : idx) out.push_back(pts[i]);
  return out;
}

/// Shifts v_n by -tol(n) so the tail rule can compare against 0.
std::vector<double> minus_tol(std::vector<double> v, const TolSchedule& tol) {
  for (std::size_t n = 0; n < v.size(); ++n) v[n] -= tol.at(static_cast<long long>(n));
  return v;
}

Verdict from_tail(const TailResult& r, const char* what, Json extra) {
  extra["tail"] = r.to_json();
  switch (r.status) {
    case Status::Holds:
      return Verdict::holds(std::string(what) + (r.converging ? " (converging excess)" : ""),
                            std::move(extra), true);
    case Status::Fails:
      return Verdict::fails(what, std::move(extra), true);
    case Status::Inconclusive:
      break;
  }
  return Verdict::inconclusive(what, std::move(extra), true);
}

double sup_norm_radius(const Domain& d) {
  double r = 0.0;
  if (d.is_grid()) {
    for (const Window& w : d.window_list())
      r = std::max({r, std::abs(w.lo), std::abs(w.hi)});
    return r;
  }
  for (const auto& p : d.grid())
    for (double v : p) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace

double set_distance(VecView x, const std::vector<Vec>& set) {
  double best = kInf;
  for (const auto& p : set) best = std::min(best, distance(x, p));
  return best;
}

Json PKReport::to_json(const std::vector<Vec>& candidates) const {
  return Json{{"horizon", horizon},
              {"tol", tol.to_json()},
              {"li", points_json(candidates, li)},
              {"ls", points_json(candidates, ls)},
              {"upper", setorder::to_json(upper)},
              {"lower", setorder::to_json(lower)}};
}

PKReport pk_limits(const PointSeq& seq, const std::vector<Vec>& candidates,
                   const TailRule& rule, const TolSchedule& tol,
                   const std::vector<Vec>* target) {
  check_length(seq.size(), rule);
  for (std::size_t n = 0; n < seq.size(); ++n)
    if (seq[n].empty())
      throw PreconditionError("A_" + std::to_string(n) + " is empty");

  PKReport r;
  r.horizon = rule.horizon;
  r.tol = tol;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    int hits = 0;
    for (int n = rule.lo(); n <= rule.horizon; ++n)
      if (set_distance(candidates[c], seq[static_cast<std::size_t>(n)]) <= tol.at(n)) ++hits;
    if (hits == rule.upper_count()) r.li.push_back(c);
    if (hits >= rule.quarter()) r.ls.push_back(c);
  }
  if (target != nullptr) {
    r.upper = upper_pk_verdict(
        seq, [&](VecView x) { return set_distance(x, *target); }, rule, tol);
    r.lower = lower_pk_verdict(seq, *target, rule, tol);
  } else {
    r.upper = Verdict::inconclusive("no target set given");
    r.lower = Verdict::inconclusive("no target set given");
  }
  return r;
}

Verdict upper_pk_verdict(const PointSeq& seq, const TargetDistance& dist,
                         const TailRule& rule, const TolSchedule& tol) {
  check_length(seq.size(), rule);
  std::vector<double> excess(seq.size(), 0.0);
  std::vector<int> worst(seq.size(), -1);
  for (std::size_t n = 0; n < seq.size(); ++n) {
    for (std::size_t i = 0; i < seq[n].size(); ++i) {
      const double d = dist(seq[n][i]);
      if (d > excess[n] || worst[n] < 0) {
        excess[n] = std::max(excess[n], d);
        worst[n] = static_cast<int>(i);
      }
    }
  }
  const TailResult t = eventually(minus_tol(excess, tol), 0.0, false, 0.0, rule);
  Json ev;
  if (t.first_violation >= 0) {
    const auto n = static_cast<std::size_t>(t.first_violation);
    ev["escaping_point"] = seq[n][static_cast<std::size_t>(worst[n])];
    ev["n"] = t.first_violation;
    ev["excess"] = excess[n];
  }
  return from_tail(t, "upper limit inside target", std::move(ev));
}

Verdict lower_pk_verdict(const PointSeq& seq, const std::vector<Vec>& target,
                         const TailRule& rule, const TolSchedule& tol) {
  check_length(seq.size(), rule);
  std::vector<double> gap(seq.size(), 0.0);
  std::vector<int> worst(seq.size(), -1);
  for (std::size_t n = 0; n < seq.size(); ++n) {
    for (std::size_t t = 0; t < target.size(); ++t) {
      const double d = set_distance(target[t], seq[n]);
      if (d > gap[n] || worst[n] < 0) {
        gap[n] = std::max(gap[n], d);
        worst[n] = static_cast<int>(t);
      }
    }
  }
  const TailResult t = eventually(minus_tol(gap, tol), 0.0, false, 0.0, rule);
  Json ev;
  if (t.first_violation >= 0) {
    const auto n = static_cast<std::size_t>(t.first_violation);
    if (worst[n] >= 0) ev["unreached_point"] = target[static_cast<std::size_t>(worst[n])];
    ev["n"] = t.first_violation;
    ev["gap"] = std::isfinite(gap[n]) ? Json(gap[n]) : Json("inf");
  }
  return from_tail(t, "target inside lower limit", std::move(ev));
}

double domain_distance(const Domain& d, VecView x) {
  if (!d.is_grid()) return set_distance(x, d.grid());
  double s = 0.0;
  const auto& ws = d.window_list();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    double e = 0.0;
    if (x[i] < ws[i].lo) e = ws[i].lo - x[i];
    if (x[i] > ws[i].hi) e = x[i] - ws[i].hi;
    s += e * e;
  }
  return std::sqrt(s);
}

Verdict kuratowski_pair(const std::function<const Domain&(long long)>& domain_at,
                        const Domain& d, const TailRule& rule,
                        const TolSchedule& tol) {
  // Uniform boundedness: the sup-norm radius of D_n must stop growing. The
  // tail hull over T2 may exceed the hull over T1 only by a shrinking step.
  std::vector<double> radius;
  for (int n = 0; n <= rule.horizon; ++n) {
    const Domain& dn = domain_at(n);
    if (n >= rule.lo() && dn.truncated())
      return Verdict::inconclusive("truncated domain window: boundedness undecided",
                                   Json{{"n", n}});
    radius.push_back(sup_norm_radius(dn));
  }
  const double r0 = radius[static_cast<std::size_t>(rule.lo())];
  double r1 = 0.0;
  double r2 = 0.0;
  int arg2 = rule.mid();
  for (int n = rule.lo(); n <= rule.horizon; ++n) {
    const double r = radius[static_cast<std::size_t>(n)];
    if (n < rule.mid()) {
      r1 = std::max(r1, r);
    } else if (r > r2) {
      r2 = r;
      arg2 = n;
    }
  }
  const double slack = 1e-12 * std::max(1.0, r1);
  const bool bounded =
      r2 <= r1 + slack || (r1 > r0 && r2 - r1 <= rule.rho * (r1 - r0));
  Json bound{{"t1_radius", r1}, {"t2_radius", r2}};
  if (!bounded) {
    bound["n"] = arg2;
    return Verdict::fails("domains D_n are not uniformly bounded", std::move(bound), true);
  }

  PointSeq seq;
  for (int n = 0; n <= rule.horizon; ++n) seq.push_back(domain_at(n).grid());
  Verdict upper = upper_pk_verdict(
      seq, [&](VecView x) { return domain_distance(d, x); }, rule, tol);
  Json ev{{"bound", bound}, {"upper_limit", to_json(upper)}};
  if (upper.is_holds())
    return Verdict::holds("bounded tail and Ls(D_n) inside D", std::move(ev), true);
  if (upper.is_fails())
    return Verdict::fails("Ls(D_n) escapes D", std::move(ev), true);
  return Verdict::inconclusive("upper limit of D_n undecided", std::move(ev), true);
}

}  // namespace setorder
