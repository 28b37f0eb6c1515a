#include "setorder/gamma.hpp"

#include <algorithm>
#include <cmath>

#include "setorder/error.hpp"

namespace setorder {
namespace {

/// Outcome of a property "value_n against t" checked over the eps schedule
/// along one sequence.
struct EpsScan {
  Status status = Status::Holds;
  bool converging = false;  ///< some t held only through a converging excess
  double t = 0.0;           ///< first t at the worst status
  TailResult tail;
};

/// Tail statuses over every t of the schedule. `series` holds the deficit
/// per n; the property at t is deficit <= t (or < t when strict).
EpsScan scan_schedule(const std::vector<double>& series, bool strict,
                      const OrderCtx& ctx, const TailRule& rule) {
  EpsScan worst;
  for (double t : ctx.eps_schedule) {
    const TailResult r = eventually(series, t, strict, ctx.tol, rule);
    worst.converging = worst.converging || r.converging;
    const Status merged = combine(worst.status, r.status);
    if (merged != worst.status) {
      worst.status = merged;
      worst.t = t;
      worst.tail = r;
    }
    if (worst.status == Status::Fails) break;
  }
  return worst;
}

Verdict to_verdict(Status s, const std::string& what, Json ev) {
  switch (s) {
    case Status::Holds:
      return Verdict::holds(what, std::move(ev), true);
    case Status::Fails:
      return Verdict::fails(what, std::move(ev), true);
    case Status::Inconclusive:
      break;
  }
  return Verdict::inconclusive(what, std::move(ev), true);
}

/// Battery route: every sequence x_n -> xbar in D_n, every t, property on
/// deficit_n = deficit(lhs_n, rhs_n) produced by `deficit`.
Verdict battery_route(const std::vector<Sequence>& seqs,
                      const std::function<double(long long, VecView)>& deficit,
                      bool strict, const CheckOptions& opt, const OrderCtx& ctx,
                      const std::string& what) {
  Status total = Status::Holds;
  Json bad;
  int converging = 0;
  for (const auto& s : seqs) {
    std::vector<double> series(s.points.size(), 0.0);
    for (int n = opt.rule.lo(); n <= opt.rule.horizon; ++n)
      series[static_cast<std::size_t>(n)] = deficit(n, s.points[static_cast<std::size_t>(n)]);
    const EpsScan sc = scan_schedule(series, strict, ctx, opt.rule);
    if (sc.converging) ++converging;
    if (sc.status != Status::Holds && combine(total, sc.status) != total) {
      total = combine(total, sc.status);
      const int n = sc.tail.first_violation >= 0 ? sc.tail.first_violation : opt.rule.lo();
      bad = Json{{"sequence", s.certificate(opt.battery.seed)},
                 {"eps_t", sc.t},
                 {"n", n},
                 {"x_n", s.points[static_cast<std::size_t>(n)]},
                 {"deficit", series[static_cast<std::size_t>(n)]},
                 {"tail", sc.tail.to_json()}};
    }
    if (total == Status::Fails) break;
  }
  if (total == Status::Holds)
    return to_verdict(total, what,
                      Json{{"sequences", seqs.size()},
                           {"converging_sequences", converging},
                           {"battery", opt.battery.to_json()}});
  return to_verdict(total, what, std::move(bad));
}

std::vector<Sequence> battery_for(const Problem& p, VecView xbar, const CheckOptions& opt,
                                  const std::function<double(std::size_t)>& score_at) {
  const Domain& d = p.domain();
  const DomainAt at = [&](long long) -> const Domain& { return d; };
  const ScoreFn score = [&](long long, std::size_t i) { return score_at(i); };
  return generate(opt.battery, xbar, at, opt.rule.horizon, d.width(), &score);
}

void require_horizon(const PerturbedFamily& fam, const TailRule& rule) {
  if (rule.horizon > fam.n_max())
    throw HorizonExceeded("horizon " + std::to_string(rule.horizon) +
                          " exceeds the family's n_max " + std::to_string(fam.n_max()));
}

/// Lower condition (a) over the battery with x_n in D_n.
Verdict lower_route(const PerturbedFamily& fam, const SetRep& fx, VecView xbar,
                    const DomainAt& domain_at, double width, const CheckOptions& opt,
                    const OrderCtx& ctx) {
  const ScoreFn score = [&](long long n, std::size_t i) {
    return ray_deficit(fx, fam.family_at(n).value(i), ctx);
  };
  const auto seqs = generate(opt.battery, xbar, domain_at, opt.rule.horizon, width, &score);
  return battery_route(
      seqs, [&](long long n, VecView x) { return ray_deficit(fx, fam.value_n(n, x), ctx); },
      /*strict=*/false, opt, ctx, "F(xbar) - eps large-preceq F_n(x_n) eventually");
}

/// Neighbourhood route: for each t some ball around xbar has every probe
/// point x0 with F(xbar) - t u strictly below F_n(x0) eventually.
Verdict lemma_route(const PerturbedFamily& fam, const Problem& limit, const SetRep& fx,
                    VecView xbar, const CheckOptions& opt, const OrderCtx& ctx) {
  const Domain& d = limit.domain();
  const double big_r = opt.battery.radius > 0 ? opt.battery.radius : d.width();
  // xbar itself plus the grid points of the largest ball
  std::vector<Vec> probes;
  probes.push_back(d.project(xbar));
  for (const auto& g : d.grid())
    if (distance(g, xbar) <= big_r) probes.push_back(g);

  std::vector<std::vector<double>> series(probes.size());
  std::vector<double> dist(probes.size());
  for (std::size_t k = 0; k < probes.size(); ++k) {
    dist[k] = distance(probes[k], xbar);
    series[k].assign(static_cast<std::size_t>(opt.rule.horizon) + 1, 0.0);
    for (int n = opt.rule.lo(); n <= opt.rule.horizon; ++n)
      series[k][static_cast<std::size_t>(n)] = ray_deficit(fx, fam.value_n(n, probes[k]), ctx);
  }

  Status total = Status::Holds;
  Json bad;
  Json radii = Json::array();
  for (double t : ctx.eps_schedule) {
    Status best = Status::Fails;
    int level = -1;
    Json first_fail;
    for (int j = 0; j <= opt.max_ball_level && best != Status::Holds; ++j) {
      const double r = std::ldexp(big_r, -j);
      Status ball = Status::Holds;
      for (std::size_t k = 0; k < probes.size(); ++k) {
        if (dist[k] > r) continue;
        const TailResult tr = eventually(series[k], t, /*strict=*/true, ctx.tol, opt.rule);
        if (tr.status != Status::Holds && first_fail.is_null())
          first_fail = Json{{"x0", probes[k]}, {"radius", r}, {"tail", tr.to_json()}};
        ball = combine(ball, tr.status);
        if (ball == Status::Fails) break;
      }
      if (ball == Status::Holds) {
        best = Status::Holds;
        level = j;
      } else if (ball == Status::Inconclusive) {
        best = Status::Inconclusive;
      }
    }
    radii.push_back(Json{{"eps_t", t}, {"ball_level", level}});
    if (best != Status::Holds && combine(total, best) != total) {
      total = combine(total, best);
      bad = Json{{"eps_t", t}, {"probe", first_fail}};
    }
  }
  if (total == Status::Holds)
    return to_verdict(total, "neighbourhood of xbar found for every eps",
                      Json{{"probes", probes.size()}, {"radii", radii}});
  return to_verdict(total, "no neighbourhood works for some eps", std::move(bad));
}

/// Upper condition: a recovery sequence x*_n -> xbar in D_n with F_n(x*_n)
/// large-preceq F(xbar) + eps eventually.
Verdict upper_route(const PerturbedFamily& fam, const SetRep& fx, VecView xbar,
                    const DomainAt& domain_at, double width, const CheckOptions& opt,
                    const OrderCtx& ctx, Json& recovery_out) {
  const int horizon = opt.rule.horizon;
  const double big_r = opt.battery.radius > 0 ? opt.battery.radius : width;

  auto judge = [&](const std::vector<Vec>& xs, Json& ev) {
    std::vector<double> excess(xs.size(), 0.0);
    std::vector<double> dist(xs.size(), 0.0);
    for (int n = opt.rule.lo(); n <= horizon; ++n) {
      const auto k = static_cast<std::size_t>(n);
      excess[k] = ray_deficit(fam.value_n(n, xs[k]), fx, ctx);
      dist[k] = distance(xs[k], xbar) - opt.tol.at(n);
    }
    const EpsScan sc = scan_schedule(excess, /*strict=*/false, ctx, opt.rule);
    const TailResult conv = eventually(dist, 0.0, false, 0.0, opt.rule);
    ev = Json{{"convergence", conv.to_json()}};
    if (sc.status != Status::Holds) {
      const int n = sc.tail.first_violation >= 0 ? sc.tail.first_violation : opt.rule.lo();
      ev["eps_t"] = sc.t;
      ev["n"] = n;
      ev["x_star_n"] = xs[static_cast<std::size_t>(n)];
      ev["excess"] = excess[static_cast<std::size_t>(n)];
      ev["tail"] = sc.tail.to_json();
    }
    return combine(sc.status, conv.status);
  };

  Json hint_ev;
  Status hint_status = Status::Inconclusive;
  if (fam.recovery()) {
    std::vector<Vec> xs;
    for (int n = 0; n <= horizon; ++n)
      xs.push_back(domain_at(n).project((*fam.recovery())(xbar, n)));
    hint_status = judge(xs, hint_ev);
    recovery_out = Json{{"source", "hint"},
                        {"description", fam.description().value("recovery_hint", Json())},
                        {"first", xs[static_cast<std::size_t>(opt.rule.lo())]},
                        {"last", xs.back()}};
    if (hint_status == Status::Holds)
      return Verdict::holds("recovery hint satisfies the upper condition", hint_ev, true);
  }

  // Grid search: in each ball of radius R / (n + 1) take the point with the
  // smallest deficit; ties go to the point nearest xbar, then lowest index.
  std::vector<Vec> xs;
  for (int n = 0; n <= horizon; ++n) {
    const Domain& dn = domain_at(n);
    const auto& grid = dn.grid();
    const Problem& pn = fam.family_at(n);
    const double reach = big_r / (n + 1);
    std::vector<std::size_t> ball;
    std::size_t nearest = 0;
    double nearest_d = kInf;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double dd = distance(grid[g], xbar);
      if (dd < nearest_d) {
        nearest_d = dd;
        nearest = g;
      }
      if (dd <= reach) ball.push_back(g);
    }
    if (ball.empty()) ball.push_back(nearest);
    const std::size_t stride = std::max<std::size_t>(1, ball.size() / opt.recovery_budget +
                                                            (ball.size() % opt.recovery_budget ? 1 : 0));
    std::size_t best = ball.front();
    double best_val = kInf;
    double best_d = kInf;
    if (n >= opt.rule.lo()) {
      for (std::size_t k = 0; k < ball.size(); k += stride) {
        const std::size_t g = ball[k];
        const double v = ray_deficit(pn.value(g), fx, ctx);
        const double dd = distance(grid[g], xbar);
        if (v < best_val - 1e-15 || (std::abs(v - best_val) <= 1e-15 && dd < best_d)) {
          best_val = v;
          best_d = dd;
          best = g;
        }
      }
    } else {
      best = nearest;
    }
    xs.push_back(grid[best]);
  }
  Json search_ev;
  const Status search_status = judge(xs, search_ev);
  Json rec{{"source", "grid-search"},
           {"first", xs[static_cast<std::size_t>(opt.rule.lo())]},
           {"last", xs.back()}};
  if (fam.recovery()) rec["hint"] = recovery_out;
  recovery_out = rec;
  if (fam.recovery()) search_ev["hint_result"] = hint_ev;
  switch (search_status) {
    case Status::Holds:
      return Verdict::holds("grid-search recovery satisfies the upper condition", search_ev, true);
    case Status::Fails:
      return Verdict::fails("best recovery candidate in every ball fails", search_ev, true);
    case Status::Inconclusive:
      break;
  }
  return Verdict::inconclusive("no recovery sequence established", search_ev, true);
}

}  // namespace

Json CheckOptions::to_json() const {
  return Json{{"battery", battery.to_json()},
              {"horizon", rule.horizon},
              {"rho", rule.rho},
              {"tol_schedule", tol.to_json()},
              {"max_ball_level", max_ball_level},
              {"recovery_budget", recovery_budget}};
}

Verdict lsc_check(const Problem& p, VecView xbar, const CheckOptions& opt,
                  const OrderCtx& ctx) {
  const SetRep fx = p.evaluate(xbar);
  const auto seqs = battery_for(p, xbar, opt, [&](std::size_t i) {
    return ray_deficit(fx, p.value(i), ctx);
  });
  return battery_route(
      seqs, [&](long long, VecView x) { return ray_deficit(fx, p.evaluate(x), ctx); },
      /*strict=*/true, opt, ctx, "F(xbar) - eps strictly below F(x_n) eventually");
}

Verdict usc_check(const Problem& p, VecView xbar, const CheckOptions& opt,
                  const OrderCtx& ctx) {
  const SetRep fx = p.evaluate(xbar);
  const auto seqs = battery_for(p, xbar, opt, [&](std::size_t i) {
    return ray_deficit(p.value(i), fx, ctx);
  });
  return battery_route(
      seqs, [&](long long, VecView x) { return ray_deficit(p.evaluate(x), fx, ctx); },
      /*strict=*/true, opt, ctx, "F(x_n) - eps strictly below F(xbar) eventually");
}

Status GammaReport::status() const {
  Status s = combine(lower.status, upper.status);
  if (sequential) s = combine(s, domains.status);
  if (!sequential && !routes_agree) s = combine(s, Status::Inconclusive);
  return s;
}

Json GammaReport::to_json() const {
  Json j{{"xbar", xbar},
         {"sequential", sequential},
         {"status", to_string(status())},
         {"lower", setorder::to_json(lower)},
         {"upper", setorder::to_json(upper)},
         {"recovery", recovery},
         {"eps_t", eps}};
  if (sequential) {
    j["domains"] = setorder::to_json(domains);
  } else {
    j["lemma"] = setorder::to_json(lemma);
    j["routes_agree"] = routes_agree;
  }
  return j;
}

DomainAt family_domains(const PerturbedFamily& fam) {
  return [&fam](long long n) -> const Domain& { return fam.domain_at(n); };
}

GammaReport gamma_check(const PerturbedFamily& fam, const Problem& limit, VecView xbar,
                        const CheckOptions& opt, const OrderCtx& ctx) {
  require_horizon(fam, opt.rule);
  if (!fam.fixed_domain())
    throw PreconditionError("gamma_check needs D_n = D; use the sequential variant");
  GammaReport r;
  r.xbar.assign(xbar.begin(), xbar.end());
  r.eps = ctx.eps_schedule;
  const SetRep fx = limit.evaluate(xbar);
  const Domain& d = limit.domain();
  const DomainAt at = [&](long long) -> const Domain& { return d; };
  r.lower = lower_route(fam, fx, xbar, at, d.width(), opt, ctx);
  r.lemma = lemma_route(fam, limit, fx, xbar, opt, ctx);
  r.routes_agree = r.lower.status == r.lemma.status;
  r.upper = upper_route(fam, fx, xbar, at, d.width(), opt, ctx, r.recovery);
  r.domains = Verdict::holds("fixed domain");
  return r;
}

GammaReport gamma_check(const PerturbedFamily& fam, VecView xbar, const CheckOptions& opt,
                        const OrderCtx& ctx) {
  return gamma_check(fam, fam.base(), xbar, opt, ctx);
}

GammaReport gamma_seq_check(const PerturbedFamily& fam, VecView xbar,
                            const CheckOptions& opt, const OrderCtx& ctx,
                            const Verdict* domains) {
  require_horizon(fam, opt.rule);
  GammaReport r;
  r.sequential = true;
  r.xbar.assign(xbar.begin(), xbar.end());
  r.eps = ctx.eps_schedule;
  const DomainAt at = family_domains(fam);
  r.domains = domains != nullptr
                  ? *domains
                  : kuratowski_pair(at, fam.base().domain(), opt.rule, opt.tol);
  const SetRep fx = fam.base().evaluate(xbar);
  const double width = fam.base().domain().width();
  r.lower = lower_route(fam, fx, xbar, at, width, opt, ctx);
  r.lemma = Verdict::inconclusive("not run for the sequential variant");
  r.upper = upper_route(fam, fx, xbar, at, width, opt, ctx, r.recovery);
  return r;
}

}  // namespace setorder
