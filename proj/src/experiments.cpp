#include "setorder/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "setorder/error.hpp"
#include "setorder/parallel.hpp"

namespace setorder {
namespace {

Verdict from_status(Status s, const std::string& what, Json ev, bool sampled = true) {
  switch (s) {
    case Status::Holds:
      return Verdict::holds(what, std::move(ev), sampled);
    case Status::Fails:
      return Verdict::fails(what, std::move(ev), sampled);
    case Status::Inconclusive:
      break;
  }
  return Verdict::inconclusive(what, std::move(ev), sampled);
}

/// Runs `check` at every grid point of D in parallel and folds the results.
template <typename Check>
Verdict everywhere(const Problem& base, const std::string& what, Check check) {
  std::vector<GammaReport> reports(base.size());
  parallel_for(base.size(), [&](std::size_t i) { reports[i] = check(base.point(i)); });
  Status total = Status::Holds;
  Json first_bad;
  int disagreements = 0;
  for (const auto& r : reports) {
    if (!r.sequential && !r.routes_agree) ++disagreements;
    const Status s = r.status();
    if (combine(total, s) != total) {
      total = combine(total, s);
      first_bad = r.to_json();
    }
  }
  Json ev{{"points", base.size()}, {"route_disagreements", disagreements}};
  if (!first_bad.is_null()) ev["first_failure"] = first_bad;
  return from_status(total, what, std::move(ev));
}

std::vector<Vec> points_of(const Problem& p, const std::vector<std::size_t>& idx) {
  std::vector<Vec> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(p.point(i));
  return out;
}

int max_horizon(const PerturbedFamily& fam, const CheckOptions& opt) {
  if (opt.rule.horizon > fam.n_max())
    throw HorizonExceeded("horizon exceeds the family's n_max");
  return opt.rule.horizon;
}

/// Greedy clustering of the tail points; each center is a candidate limit.
Json cluster_tail(const PointSeq& seq, const TailRule& rule, double radius,
                  const std::vector<Vec>& target) {
  std::vector<Vec> centers;
  for (int n = rule.lo(); n <= rule.horizon; ++n) {
    for (const auto& p : seq[static_cast<std::size_t>(n)]) {
      bool placed = false;
      for (const auto& c : centers)
        if (distance(c, p) <= radius) {
          placed = true;
          break;
        }
      if (!placed) centers.push_back(p);
      if (centers.size() >= 64) break;
    }
  }
  Json out = Json::array();
  for (const auto& c : centers)
    out.push_back(Json{{"center", c}, {"distance_to_target", set_distance(c, target)}});
  return out;
}

std::vector<EffResult> per_n_eff(const PerturbedFamily& fam, EffKind kind, int horizon,
                                 const OrderCtx& ctx, std::vector<Relations>* rels = nullptr) {
  std::vector<EffResult> out;
  for (int n = 0; n <= horizon; ++n) {
    Relations rel(fam.family_at(n), ctx);
    out.push_back(eff(rel, kind));
    if (rels != nullptr) rels->push_back(std::move(rel));
  }
  return out;
}

/// Hypothesis (H) at every grid point of one problem.
Verdict hypothesis_h_all(const Problem& p, const Relations& rel, EffKind kind) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    Verdict v = hypothesis_h(p, rel, kind, i);
    if (!v.is_holds()) return v;
  }
  return Verdict::holds("every level set meets the solution set",
                        Json{{"points", p.size()}});
}

}  // namespace

bool TheoremReport::asserted() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(),
                     [](const Claim& c) { return c.verdict.is_holds(); });
}

Status TheoremReport::outcome() const {
  if (!asserted()) return Status::Inconclusive;
  Status s = Status::Holds;
  for (const auto& c : conclusions) s = combine(s, c.verdict.status);
  return s;
}

Json TheoremReport::to_json() const {
  auto claims = [](const std::vector<Claim>& cs) {
    Json out = Json::array();
    for (const auto& c : cs) out.push_back(Json{{"name", c.name}, {"verdict", setorder::to_json(c.verdict)}});
    return out;
  };
  return Json{{"theorem", theorem},
              {"asserted", asserted()},
              {"outcome", to_string(outcome())},
              {"hypotheses", claims(hypotheses)},
              {"conclusions", claims(conclusions)},
              {"details", details}};
}

const char* to_string(Direction d) { return d == Direction::External ? "external" : "internal"; }

Verdict gamma_everywhere(const PerturbedFamily& fam, const CheckOptions& opt,
                         const OrderCtx& ctx) {
  return everywhere(fam.base(), "Gamma-convergence at every grid point",
                    [&](VecView x) { return gamma_check(fam, x, opt, ctx); });
}

Verdict gamma_seq_everywhere(const PerturbedFamily& fam, const CheckOptions& opt,
                             const OrderCtx& ctx) {
  const Verdict domains =
      kuratowski_pair(family_domains(fam), fam.base().domain(), opt.rule, opt.tol);
  Verdict v = everywhere(fam.base(), "sequential Gamma-convergence at every grid point",
                         [&](VecView x) { return gamma_seq_check(fam, x, opt, ctx, &domains); });
  v.evidence["kuratowski_pair"] = to_json(domains);
  return v;
}

std::vector<TheoremReport> levelset_convergence_experiment(
    const PerturbedFamily& fam, const SetSeq& omega_n, const SetRep& omega,
    const CheckOptions& opt, const OrderCtx& ctx) {
  const int horizon = max_horizon(fam, opt);
  const Verdict gamma = fam.fixed_domain()
                            ? gamma_everywhere(fam, opt, ctx)
                            : Verdict::fails("D_n differs from D", Json::object());

  std::vector<double> up(static_cast<std::size_t>(horizon) + 1, 0.0);
  std::vector<double> low(static_cast<std::size_t>(horizon) + 1, 0.0);
  PointSeq levels(static_cast<std::size_t>(horizon) + 1);
  for (int n = 0; n <= horizon; ++n) {
    const auto k = static_cast<std::size_t>(n);
    const SetRep om = omega_n(n);
    if (n >= opt.rule.lo()) {
      up[k] = ray_deficit(om, omega, ctx);
      low[k] = strict_lt(omega, om, ctx) ? 0.0 : 1.0;
    }
    levels[k] = points_of(fam.family_at(n), strong_level_set(fam.family_at(n), om, ctx));
  }
  const Problem& base = fam.base();
  const std::vector<Vec> target = points_of(base, strong_level_set(base, omega, ctx));

  // (b) upper: for every t some subsequence has Omega_n - t u below Omega.
  Status hb = Status::Holds;
  Json hb_ev;
  for (double t : ctx.eps_schedule) {
    const TailResult r = infinitely_often(up, t, false, ctx.tol, opt.rule);
    if (combine(hb, r.status) != hb) {
      hb = combine(hb, r.status);
      hb_ev = Json{{"eps_t", t}, {"tail", r.to_json()}};
    }
  }
  const Verdict upper_b = from_status(hb, "Omega_n - eps large-preceq Omega infinitely often", hb_ev);
  const TailResult lr = eventually(low, 0.5, false, 0.0, opt.rule);
  const Verdict lower_b = from_status(lr.status, "Omega strictly below Omega_n eventually",
                                      Json{{"tail", lr.to_json()}});

  Json details{{"level_set_size", target.size()},
               {"tail_level_set_sizes", Json::array()}};
  for (int n = opt.rule.lo(); n <= horizon; n += 8)
    details["tail_level_set_sizes"].push_back(Json{{"n", n}, {"size", levels[static_cast<std::size_t>(n)].size()}});

  TheoremReport upper{"upper-convergence-of-strong-level-sets", {}, {}, details};
  upper.hypotheses = {{"a: Gamma-convergence", gamma}, {"b: Omega_n subsequence below Omega", upper_b}};
  upper.conclusions = {{"Ls(Lev_{Omega_n}(F_n)) inside Lev_Omega(F)",
                        upper_pk_verdict(
                            levels, [&](VecView x) { return set_distance(x, target); },
                            opt.rule, opt.tol)}};

  TheoremReport lower{"lower-convergence-of-strong-level-sets", {}, {}, details};
  lower.hypotheses = {{"a: Gamma-convergence", gamma}, {"b: Omega strictly below Omega_n eventually", lower_b}};
  lower.conclusions = {{"Lev_Omega(F) inside Li(Lev_{Omega_n}(F_n))",
                        lower_pk_verdict(levels, target, opt.rule, opt.tol)}};
  return {upper, lower};
}

TheoremReport stability_experiment(const PerturbedFamily& fam, EffKind kind, Direction dir,
                                   const CheckOptions& opt, const OrderCtx& ctx,
                                   const Verdict* gamma_seq) {
  if (kind != EffKind::Relaxed && kind != EffKind::Geoffroy)
    throw PreconditionError("stability theorems cover relaxed and Geoffroy solutions");
  const int horizon = max_horizon(fam, opt);
  const Problem& base = fam.base();
  const Relations base_rel(base, ctx);
  const EffResult base_eff = eff(base_rel, kind);
  std::vector<Relations> rels;
  const std::vector<EffResult> effs = per_n_eff(fam, kind, horizon, ctx, &rels);

  PointSeq sols(effs.size());
  for (std::size_t n = 0; n < effs.size(); ++n)
    sols[n] = points_of(fam.family_at(static_cast<long long>(n)), effs[n].indices);
  const std::vector<Vec> target = points_of(base, base_eff.indices);

  TheoremReport rep;
  rep.theorem = std::string(to_string(dir)) + "-stability-" + to_string(kind);
  rep.hypotheses.push_back({"a: sequential Gamma-convergence",
                            gamma_seq != nullptr ? *gamma_seq : gamma_seq_everywhere(fam, opt, ctx)});

  Json sizes = Json::array();
  for (int n = opt.rule.lo(); n <= horizon; n += 8)
    sizes.push_back(Json{{"n", n}, {"size", effs[static_cast<std::size_t>(n)].indices.size()}});
  rep.details = Json{{"base_solutions", target},
                     {"tail_solution_sizes", sizes},
                     {"clusters", cluster_tail(sols, opt.rule, 2.0 * opt.tol.at(opt.rule.lo()), target)}};

  if (dir == Direction::External) {
    if (kind == EffKind::Geoffroy)
      rep.hypotheses.push_back({"b: sequential lower converse property",
                                seq_lower_converse(fam, opt.battery, ctx, opt.rule)});
    // Every tail selection clusters inside the base solution set.
    rep.conclusions.push_back(
        {"cluster points of per-n solutions lie in the base solution set",
         upper_pk_verdict(
             sols, [&](VecView x) { return set_distance(x, target); }, opt.rule, opt.tol)});
    return rep;
  }

  // Internal: nonempty per-n solution sets and Hypothesis (H) throughout.
  int empty_at = -1;
  for (int n = 0; n <= horizon; ++n)
    if (effs[static_cast<std::size_t>(n)].indices.empty()) {
      empty_at = n;
      break;
    }
  Verdict nonempty = empty_at < 0
                         ? Verdict::holds("per-n solution sets are nonempty", Json{{"horizon", horizon}})
                         : Verdict::fails("empty per-n solution set", Json{{"n", empty_at}});
  Verdict h = hypothesis_h_all(base, base_rel, kind);
  for (int n = 0; n <= horizon && h.is_holds(); ++n) {
    Verdict hn = hypothesis_h_all(fam.family_at(n), rels[static_cast<std::size_t>(n)], kind);
    if (!hn.is_holds()) {
      hn.evidence["n"] = n;
      h = hn;
    }
  }
  rep.hypotheses.push_back({"b: nonempty solution sets", nonempty});
  rep.hypotheses.push_back({"b: Hypothesis (H)", h});

  // For each base solution xbar some per-n solutions approach a base
  // solution z related to xbar (equivalent for Geoffroy, below for relaxed).
  Status total = Status::Holds;
  Json bad;
  for (std::size_t xb : base_eff.indices) {
    std::vector<Vec> related;
    for (std::size_t z : base_eff.indices) {
      const bool ok = kind == EffKind::Geoffroy ? (base_rel.large(z, xb) && base_rel.large(xb, z))
                                                : base_rel.large(z, xb);
      if (ok) related.push_back(base.point(z));
    }
    std::vector<double> gap(static_cast<std::size_t>(horizon) + 1, 0.0);
    for (int n = opt.rule.lo(); n <= horizon; ++n) {
      double g = kInf;
      for (const auto& z : related) g = std::min(g, set_distance(z, sols[static_cast<std::size_t>(n)]));
      gap[static_cast<std::size_t>(n)] = g - opt.tol.at(n);
    }
    const TailResult r = infinitely_often(gap, 0.0, false, 0.0, opt.rule);
    if (combine(total, r.status) != total) {
      total = combine(total, r.status);
      bad = Json{{"xbar", base.point(xb)}, {"tail", r.to_json()}};
    }
  }
  rep.conclusions.push_back(
      {"every base solution is approached by per-n solutions",
       from_status(total, "subsequence of per-n solutions near a related base solution",
                   total == Status::Holds ? Json{{"base_solutions", base_eff.indices.size()}} : bad)});
  return rep;
}

TheoremReport geoffroy_set_experiment(const PerturbedFamily& fam, Direction dir,
                                      const CheckOptions& opt, const OrderCtx& ctx) {
  const int horizon = max_horizon(fam, opt);
  const Problem& base = fam.base();
  const Relations rel(base, ctx);
  const EffResult g = eff(rel, EffKind::Geoffroy);
  const std::vector<Vec> target = points_of(base, g.indices);
  const RepresentantResult reps = representants(base, rel);

  TheoremReport rep;
  rep.theorem = std::string(to_string(dir)) + "-stability-geoffroy-set";
  rep.hypotheses.push_back({"added: finite representant", reps.verdict});
  rep.hypotheses.push_back({"a: Gamma-convergence",
                            fam.fixed_domain() ? gamma_everywhere(fam, opt, ctx)
                                               : Verdict::fails("D_n differs from D", Json::object())});

  auto level_seq = [&](const std::vector<Vec>& xs) {
    PointSeq seq(static_cast<std::size_t>(horizon) + 1);
    for (int n = opt.rule.lo(); n <= horizon; ++n) {
      const Problem& pn = fam.family_at(n);
      const SetRep om = base.evaluate(xs[static_cast<std::size_t>(n)]);
      seq[static_cast<std::size_t>(n)] = points_of(pn, strong_level_set(pn, om, ctx));
    }
    return seq;
  };

  if (dir == Direction::External) {
    // (b) usc at some GEff point; then sample x0 in its strong level set.
    std::optional<std::size_t> xbar;
    Verdict usc = Verdict::inconclusive("GEff is empty");
    for (std::size_t i : g.indices) {
      usc = usc_check(base, base.point(i), opt, ctx);
      if (usc.is_holds()) {
        xbar = i;
        usc.evidence["xbar"] = base.point(i);
        break;
      }
    }
    rep.hypotheses.push_back({"b: F upper semicontinuous at some GEff point", usc});
    if (!xbar) return rep;

    std::vector<std::size_t> x0s;
    for (std::size_t i = 0; i < base.size(); ++i)
      if (rel.large(i, *xbar)) x0s.push_back(i);
    if (x0s.size() > 8) {
      std::vector<std::size_t> pick;
      for (std::size_t k = 0; k < 8; ++k) pick.push_back(x0s[k * (x0s.size() - 1) / 7]);
      x0s = pick;
    }
    const Domain& d = base.domain();
    const DomainAt at = [&](long long) -> const Domain& { return d; };
    Status total = Status::Holds;
    Json bad;
    for (std::size_t x0 : x0s) {
      for (const auto& s : generate(opt.battery, base.point(x0), at, horizon, d.width())) {
        const Verdict v = upper_pk_verdict(
            level_seq(s.points), [&](VecView x) { return set_distance(x, target); },
            opt.rule, opt.tol);
        if (combine(total, v.status) != total) {
          total = combine(total, v.status);
          bad = Json{{"x0", base.point(x0)}, {"sequence", s.certificate(opt.battery.seed)},
                     {"verdict", to_json(v)}};
        }
      }
    }
    rep.conclusions.push_back(
        {"Ls(Lev_{F(x_n)}(F_n)) inside GEff",
         from_status(total, "upper limit of level sets along sampled x_n -> x0",
                     total == Status::Holds ? Json{{"x0_count", x0s.size()}} : bad)});
    return rep;
  }

  // Internal: (b) a constant sequence z with F(x^i) strictly below F(z) for
  // every representant.
  std::optional<std::size_t> z;
  if (reps.rep) {
    for (std::size_t c = 0; c < base.size() && !z; ++c) {
      bool all = true;
      for (std::size_t r : reps.rep->reps) all = all && rel.strict(r, c);
      if (all) z = c;
    }
  }
  rep.hypotheses.push_back(
      {"b: sequence strictly above every representant",
       z ? Verdict::holds("constant grid sequence", Json{{"x_n", base.point(*z)}}, true)
         : Verdict::inconclusive("no constant grid sequence found", Json::object(), true)});
  if (!z) return rep;
  std::vector<Vec> xs(static_cast<std::size_t>(horizon) + 1, base.point(*z));
  rep.conclusions.push_back({"GEff inside Li(Lev_{F(x_n)}(F_n))",
                             lower_pk_verdict(level_seq(xs), target, opt.rule, opt.tol)});
  return rep;
}

TheoremReport gamma_limit_lsc_experiment(const PerturbedFamily& fam, const CheckOptions& opt,
                                         const OrderCtx& ctx) {
  TheoremReport rep;
  rep.theorem = "gamma-limit-lower-semicontinuity";
  rep.hypotheses.push_back({"Gamma-convergence at every grid point",
                            fam.fixed_domain() ? gamma_everywhere(fam, opt, ctx)
                                               : Verdict::fails("D_n differs from D", Json::object())});
  const Problem& base = fam.base();
  std::vector<Verdict> lsc(base.size());
  parallel_for(base.size(), [&](std::size_t i) { lsc[i] = lsc_check(base, base.point(i), opt, ctx); });
  Status total = Status::Holds;
  Json bad;
  for (std::size_t i = 0; i < lsc.size(); ++i)
    if (combine(total, lsc[i].status) != total) {
      total = combine(total, lsc[i].status);
      bad = Json{{"xbar", base.point(i)}, {"verdict", to_json(lsc[i])}};
    }
  rep.conclusions.push_back(
      {"limit is lower semicontinuous at every grid point",
       from_status(total, "sequential lsc of F", total == Status::Holds ? Json{{"points", base.size()}} : bad)});
  return rep;
}

TheoremReport stationary_gamma_experiment(const PerturbedFamily& fam, VecView xbar,
                                          const CheckOptions& opt, const OrderCtx& ctx) {
  const int horizon = max_horizon(fam, opt);
  const Problem& base = fam.base();
  TheoremReport rep;
  rep.theorem = "stationary-sequence-gamma-convergence";

  Verdict stationary = Verdict::holds("F_n equivalent to F on the grid", Json{{"horizon", horizon}});
  if (!fam.fixed_domain()) stationary = Verdict::fails("D_n differs from D", Json::object());
  for (int n = 0; n <= horizon && stationary.is_holds(); ++n) {
    const Problem& pn = fam.family_at(n);
    for (std::size_t i = 0; i < base.size(); ++i)
      if (!equiv(pn.value(i), base.value(i), ctx)) {
        stationary = Verdict::fails("F_n not equivalent to F", Json{{"n", n}, {"x", base.point(i)}});
        break;
      }
  }
  const Verdict lsc = lsc_check(base, xbar, opt, ctx);
  const Verdict usc = usc_check(base, xbar, opt, ctx);
  const Status cont = combine(lsc.status, usc.status);
  rep.hypotheses.push_back({"F_n equivalent to F", stationary});
  rep.hypotheses.push_back(
      {"F continuous at xbar",
       from_status(cont, "lsc and usc at xbar", Json{{"lsc", to_json(lsc)}, {"usc", to_json(usc)}})});
  if (!fam.fixed_domain()) return rep;
  const GammaReport g = gamma_check(fam, xbar, opt, ctx);
  rep.conclusions.push_back({"Gamma-convergence at xbar",
                             from_status(g.status(), "gamma check at xbar", g.to_json())});
  return rep;
}

int exit_code(const std::vector<Status>& outcomes) {
  bool fails = false;
  bool inconclusive = false;
  for (Status s : outcomes) {
    fails = fails || s == Status::Fails;
    inconclusive = inconclusive || s == Status::Inconclusive;
  }
  if (fails) return 1;
  if (inconclusive) return 2;
  return 0;
}

}  // namespace setorder
