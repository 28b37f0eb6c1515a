// Acceptance runner: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Oracles come from support.hpp and never call the
// predicates they check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "setorder/commands.hpp"
#include "setorder/experiments.hpp"
#include "setorder/pk.hpp"
#include "setorder/solve.hpp"
#include "support.hpp"

using namespace setorder;

namespace {

using Clock = std::chrono::steady_clock;

std::string problem_path(const std::string& name) {
  return std::string(SETORDER_SOURCE_ROOT) + "/problems/" + name;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

// Criterion 1 ------------------------------------------------------------

Outcome geff_example() {
  Outcome o;
  const auto t0 = Clock::now();
  RunConfig cfg;
  cfg.command = "solve";
  cfg.inputs = {problem_path("geff_vs_reff.json")};
  const CommandResult r = run_command(cfg);
  const double secs = seconds_since(t0);
  o.require(r.exit_code == kExitHolds, "solve exit code " + std::to_string(r.exit_code));

  // grid: -0.95, -0.85, ..., 3.95
  std::vector<double> grid;
  for (int j = 0; j < 50; ++j) grid.push_back(-0.95 + 0.1 * j);
  std::vector<std::size_t> geff_expect, reff_expect;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    reff_expect.push_back(i);
    if (grid[i] <= 0 || grid[i] >= 2) geff_expect.push_back(i);
  }
  int mismatches = 0;
  for (const Json& s : r.report.at("solutions")) {
    const std::string kind = s.at("kind");
    const auto got = s.at("indices").get<std::vector<std::size_t>>();
    const auto pts = s.at("points");
    for (std::size_t k = 0; k < got.size(); ++k)
      if (std::abs(pts[k][0].get<double>() - grid[got[k]]) > 1e-9) ++mismatches;
    auto count_diff = [&](const std::vector<std::size_t>& want) {
      int d = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const bool g = std::find(got.begin(), got.end(), i) != got.end();
        const bool w = std::find(want.begin(), want.end(), i) != want.end();
        d += g != w;
      }
      return d;
    };
    if (kind == "geoffroy") mismatches += count_diff(geff_expect);
    if (kind == "relaxed") mismatches += count_diff(reff_expect);
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatched indices");
  o.require(secs < 5.0, "runtime " + std::to_string(secs) + " s");
  o.detail = o.pass ? "0 mismatched indices, " + std::to_string(secs) + " s" : o.detail;
  return o;
}

// Criterion 2 ------------------------------------------------------------

Outcome sin_example() {
  Outcome o;
  const auto t0 = Clock::now();
  const LoadedFile f = load_problem(problem_path("sop_sin.json"));
  const OrderCtx ctx(f.base.cone());
  CheckOptions opt;
  o.require(std::abs(f.base.domain().grid()[1][0] - std::numbers::pi / 400) < 1e-12, "grid step");
  const EffResult r = eff(f.base, EffKind::Relaxed, ctx);
  o.require(r.indices.size() == 1 && f.base.point(r.indices[0])[0] == 0.0, "REff(base) != {0}");
  const Verdict kp = kuratowski_pair(
      [&](long long n) -> const Domain& { return f.family->domain_at(n); }, f.base.domain(),
      opt.rule, opt.tol);
  o.require(kp.is_holds(), "kuratowski_pair: " + kp.reason);
  const Verdict g = gamma_seq_everywhere(*f.family, opt, ctx);
  o.require(g.is_holds(), "gamma_seq: " + g.reason);
  for (Direction d : {Direction::External, Direction::Internal}) {
    const TheoremReport t = stability_experiment(*f.family, EffKind::Relaxed, d, opt, ctx, &g);
    o.require(t.asserted() && t.outcome() == Status::Holds,
              std::string(to_string(d)) + " relaxed stability not asserted as Holds");
  }
  const double secs = seconds_since(t0);
  o.require(secs < 30.0, "runtime " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "REff = {0}, all checks Hold, " + std::to_string(secs) + " s";
  return o;
}

// Criterion 3 ------------------------------------------------------------

Outcome cos_example() {
  Outcome o;
  const auto t0 = Clock::now();
  const LoadedFile f = load_problem(problem_path("gamma_cos.json"));
  const OrderCtx ctx(f.base.cone());
  const GammaReport r = gamma_check(*f.family, Vec{0.0}, CheckOptions{}, ctx);
  o.require(r.lower.is_holds(), "lower: " + r.lower.reason);
  o.require(r.upper.is_holds(), "upper: " + r.upper.reason);
  o.require(r.lemma.is_holds() && r.routes_agree, "battery and neighbourhood routes disagree");
  o.require(r.recovery.value("source", "") == "hint", "recovery did not use the hint");
  // the hint is x1 + 1/(n+1) evaluated at 0
  const auto& hint = *f.family->recovery();
  for (long long n : {0LL, 7LL, 63LL})
    o.require(std::abs(hint(Vec{0.0}, n)[0] - 1.0 / static_cast<double>(n + 1)) < 1e-15,
              "recovery sequence is not 1/(n+1)");
  const double secs = seconds_since(t0);
  o.require(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "both conditions Hold, routes agree, " + std::to_string(secs) + " s";
  return o;
}

// Criterion 4 ------------------------------------------------------------

// Triples built from shared material so the antecedents of the laws are
// frequently true.
struct Triple {
  Cone cone;
  SetRep a, b, d;
};

Vec cone_element(std::mt19937_64& rng, const Cone& c) {
  // nonnegative lattice multiples of u plus a lattice vector kept when in C
  const Vec& u = c.interior_direction();
  const double k = oracle::kLattice * static_cast<double>(rng() % 5);
  Vec v(c.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = k * u[i];
  Vec w = oracle::random_point(rng, c.dim());
  for (double& x : w) x = std::abs(x);
  if (c.contains(w, 0.0)) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
  }
  return v;
}

SetRep shifted_up(std::mt19937_64& rng, const Cone& c, const SetRep& a) {
  return translate(a, cone_element(rng, c));
}

Triple random_triple(std::mt19937_64& rng, int it) {
  const std::size_t d = 1 + static_cast<std::size_t>(it % 3);
  const bool general = it % 4 == 3;
  Triple t{general ? oracle::random_cone(rng, d) : Cone::orthant(d), SetRep::point(Vec(d, 0.0)),
           SetRep::point(Vec(d, 0.0)), SetRep::point(Vec(d, 0.0))};
  auto draw = [&] {
    return general || rng() % 2 ? oracle::random_points(rng, d) : oracle::random_boxes(rng, d);
  };
  t.a = draw();
  switch (rng() % 3) {
    case 0:
      t.b = shifted_up(rng, t.cone, t.a);
      t.d = shifted_up(rng, t.cone, t.b);
      break;
    case 1:
      t.b = shifted_up(rng, t.cone, t.a);
      t.d = draw();
      break;
    default:
      t.b = draw();
      t.d = rng() % 2 ? shifted_up(rng, t.cone, t.b) : draw();
  }
  return t;
}

Outcome order_laws() {
  Outcome o;
  std::mt19937_64 rng(4);
  long violations = 0;
  std::string first;
  auto check = [&](bool ok, const char* law, int it) {
    if (!ok) {
      if (violations == 0) first = std::string(law) + " at instance " + std::to_string(it);
      ++violations;
    }
  };
  long triggered = 0;
  for (int it = 0; it < 10000; ++it) {
    const Triple t = random_triple(rng, it);
    const OrderCtx ctx(t.cone);
    const SetRep& a = t.a;
    const SetRep& b = t.b;
    const SetRep& d = t.d;
    check(lower_le(a, a, ctx) && large_le(a, a, ctx), "reflexivity", it);
    const bool le_ab = lower_le(a, b, ctx), le_bd = lower_le(b, d, ctx);
    const bool lg_ab = large_le(a, b, ctx), lg_bd = large_le(b, d, ctx);
    const bool st_ab = strict_lt(a, b, ctx);
    if (le_ab && le_bd) check(lower_le(a, d, ctx), "lower transitivity", it);
    if (lg_ab && lg_bd) check(large_le(a, d, ctx), "large transitivity", it);
    triggered += (le_ab && le_bd) + (st_ab && lg_bd);
    check(!st_ab || le_ab, "strict implies lower", it);
    check(!le_ab || lg_ab, "lower implies large", it);
    if (st_ab && lg_bd) check(strict_lt(a, d, ctx), "mixed transitivity", it);

    // Lemma (a): A + eps0 large-below B forces A strictly below B.
    Vec eps0 = t.cone.interior_direction();
    const double s = oracle::kLattice * static_cast<double>(1 + rng() % 4);
    Vec extra = cone_element(rng, t.cone);
    for (std::size_t i = 0; i < eps0.size(); ++i) eps0[i] = s * eps0[i] + extra[i];
    if (large_le(translate(a, eps0), b, ctx)) check(strict_lt(a, b, ctx), "lemma (a)", it);
    // Lemma (b) on exact box instances: strict below at every schedule step
    // forces large-below.
    if (a.is_boxes() && b.is_boxes()) {
      bool all = true;
      for (double tk : ctx.eps_schedule) {
        Vec m = ctx.eps(tk);
        for (double& x : m) x = -x;
        all = all && strict_lt(translate(a, m), b, ctx);
      }
      if (all) check(large_le(a, b, ctx), "lemma (b)", it);
    }
    // positive scaling
    const double lambda = std::array<double, 4>{0.5, 2.0, 3.0, 0.25}[rng() % 4];
    const SetRep la = scale(a, lambda), lb = scale(b, lambda);
    check(lower_le(la, lb, ctx) == le_ab && large_le(la, lb, ctx) == lg_ab &&
              strict_lt(la, lb, ctx) == st_ab,
          "scaling invariance", it);
    // equivalence laws
    const bool eq_ab = equiv(a, b, ctx);
    check(equiv(a, a, ctx), "equiv reflexive", it);
    check(eq_ab == equiv(b, a, ctx), "equiv symmetric", it);
    if (eq_ab && equiv(b, d, ctx)) check(equiv(a, d, ctx), "equiv transitive", it);
    // close_lower yields an equivalent set
    check(equiv(a, close_lower(a), ctx) || !a.is_boxes(), "closure equivalence", it);
  }
  o.require(violations == 0, std::to_string(violations) + " violations, first: " + first);
  o.require(triggered > 1000, "laws triggered too rarely: " + std::to_string(triggered));
  if (o.pass) o.detail = "10000 instances, 0 violations (" + std::to_string(triggered) + " chained antecedents)";
  return o;
}

// Criterion 5 ------------------------------------------------------------

Outcome geometry() {
  Outcome o;
  std::mt19937_64 rng(5);
  int violations = 0;
  int boundary = 0;
  for (int it = 0; it < 1000; ++it) {
    const std::size_t d = 1 + static_cast<std::size_t>(it % 3);
    const bool general = it % 2 == 1;
    const Cone c = general ? oracle::random_cone(rng, d) : Cone::orthant(d);
    const SetRep a = general || rng() % 2 ? oracle::random_points(rng, d) : oracle::random_boxes(rng, d);
    // u in int(C)
    Vec u = c.interior_direction();
    const double s = 0.25 * static_cast<double>(1 + rng() % 8);
    const Vec extra = cone_element(rng, c);
    for (std::size_t i = 0; i < d; ++i) u[i] = s * u[i] + extra[i];
    // z in cl(A + C): a sample corner of A plus an element of C; half the time
    // a point on the boundary of A + C (raw corner of an open box).
    const auto corners = oracle::samples(a, true);
    Vec z = corners[rng() % corners.size()];
    if (rng() % 2) {
      const Vec e = cone_element(rng, c);
      for (std::size_t i = 0; i < d; ++i) z[i] += e[i];
    } else {
      ++boundary;
    }
    const UpperSet closed = upset(a, c, true);
    const UpperSet open = upset(a, c, false);
    if (!closed.contains(z)) {
      ++violations;
      continue;
    }
    Vec uz = z;
    for (std::size_t i = 0; i < d; ++i) uz[i] += u[i];
    if (!open.contains_strict(uz)) ++violations;
  }
  int cone_violations = 0;
  for (int it = 0; it < 1000; ++it) {
    const std::size_t d = 1 + static_cast<std::size_t>(it % 3);
    const Cone c = it % 2 ? oracle::random_cone(rng, d) : Cone::orthant(d);
    Vec w = c.interior_direction();
    std::uniform_real_distribution<double> mag(1e-3, 4.0);
    const double s = mag(rng);
    for (double& x : w) x *= s;
    // perturb w while keeping it interior
    Vec p = oracle::random_point(rng, d);
    for (std::size_t i = 0; i < d; ++i) w[i] += 0.1 * s * p[i] / 8.0;
    if (!c.contains_interior(w)) continue;
    const Vec e = cone_element(rng, c);
    Vec sum = w;
    for (std::size_t i = 0; i < d; ++i) sum[i] += e[i];
    if (!c.contains_interior(sum)) ++cone_violations;
  }
  o.require(violations == 0, std::to_string(violations) + " violations of the u + closure law");
  o.require(cone_violations == 0, std::to_string(cone_violations) + " violations of int(C) + C");
  if (o.pass)
    o.detail = "1000 + 1000 samples (" + std::to_string(boundary) + " on the boundary), 0 violations";
  return o;
}

// Criterion 6 ------------------------------------------------------------

Problem table_problem(const Cone& cone, std::vector<SetRep> values) {
  std::vector<Vec> xs;
  for (std::size_t i = 0; i < values.size(); ++i) xs.push_back({static_cast<double>(i)});
  return Problem("table", cone, Domain::points(xs), SetValuedMap::table(xs, std::move(values)));
}

bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Outcome solver_oracle() {
  Outcome o;
  std::mt19937_64 rng(6);
  int closed_instances = 0;
  for (int it = 0; it < 200 && o.pass; ++it) {
    const std::size_t d = 1 + static_cast<std::size_t>(it % 3);
    const bool general = it % 5 == 4;
    const Cone c = general ? oracle::random_cone(rng, d) : Cone::orthant(d);
    const bool closed_valued = it % 3 == 0;
    std::vector<SetRep> palette;
    for (int k = 0; k < 6; ++k) {
      SetRep s = general || k % 2 ? oracle::random_points(rng, d) : oracle::random_boxes(rng, d);
      palette.push_back(closed_valued ? close_lower(s) : s);
    }
    std::vector<SetRep> values;
    const std::size_t n = 1 + rng() % 50;
    for (std::size_t i = 0; i < n; ++i) values.push_back(palette[rng() % palette.size()]);
    const Problem p = table_problem(c, values);
    const OrderCtx ctx(c);
    const Relations rel(p, ctx);
    std::vector<std::vector<std::size_t>> got;
    for (EffKind k : {EffKind::Strong, EffKind::Pareto, EffKind::Geoffroy, EffKind::Relaxed}) {
      got.push_back(eff(rel, k).indices);
      o.require(got.back() == oracle::eff(c, values, k),
                std::string(to_string(k)) + " differs from the reference at problem " + std::to_string(it));
    }
    o.require(subset(got[2], got[3]), "GEff not inside REff at " + std::to_string(it));
    if (!got[0].empty()) o.require(got[0] == got[1], "SEff nonempty but != PEff at " + std::to_string(it));
    if (closed_valued) {
      ++closed_instances;
      o.require(got[1] == got[2], "closed-valued but PEff != GEff at " + std::to_string(it));
      for (std::size_t i = 0; i < n; i += 7)
        o.require(strong_level_set(p, p.value(i), ctx) == classical_level_set(p, p.value(i), ctx),
                  "closed-valued but Lev != lev at " + std::to_string(it));
    }
  }
  if (o.pass)
    o.detail = "200 problems bit-identical (" + std::to_string(closed_instances) + " C-closed-valued)";
  return o;
}

// Criterion 7 ------------------------------------------------------------

Outcome pk_oracle() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> jitter(-0.6, 0.6);
  for (int it = 0; it < 100 && o.pass; ++it) {
    const std::size_t d = 1 + static_cast<std::size_t>(it % 3);
    std::vector<Vec> cand;
    for (int k = 0; k < 6; ++k) {
      Vec v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = static_cast<double>((k >> i) % 2 + 2 * (k % 3) * (i == 0));
      cand.push_back(v);
    }
    const int period = 1 + static_cast<int>(rng() % 4);
    const int pre = static_cast<int>(rng() % 31);
    std::vector<std::vector<int>> members(static_cast<std::size_t>(period));
    for (auto& m : members) {
      for (std::size_t c = 0; c < cand.size(); ++c)
        if (rng() % 3 == 0) m.push_back(static_cast<int>(c));
      if (m.empty()) m.push_back(static_cast<int>(rng() % cand.size()));
    }
    PointSeq seq;
    for (int n = 0; n <= 64; ++n) {
      std::vector<Vec> an;
      if (n < pre) {
        for (int k = 0; k < 3; ++k) an.push_back(cand[rng() % cand.size()]);
      } else {
        for (int c : members[static_cast<std::size_t>(n % period)]) {
          Vec p = cand[static_cast<std::size_t>(c)];
          for (double& x : p) x += jitter(rng) / (static_cast<double>(n + 1) * std::sqrt(static_cast<double>(d)));
          an.push_back(p);
        }
      }
      seq.push_back(an);
    }
    std::vector<std::vector<int>> tail;
    for (int n = 32; n < 32 + period; ++n) tail.push_back(members[static_cast<std::size_t>(n % period)]);
    std::vector<std::size_t> li, ls;
    oracle::periodic_limits(tail, cand.size(), li, ls);
    const PKReport r = pk_limits(seq, cand, TailRule{}, TolSchedule{});
    o.require(r.li == li && r.ls == ls, "Li/Ls mismatch at sequence " + std::to_string(it));
  }
  if (o.pass) o.detail = "100 sequences, Li and Ls match";
  return o;
}

// Criterion 8 ------------------------------------------------------------

// One-dimensional families on a window of [-1, 1].
struct FamilySpec {
  std::string map;              // pieces JSON of F
  std::string map_n;            // pieces JSON of F_n
  std::string extra;            // additional family members
  double lo = -1, hi = 1, step = 0.0625;
};

LoadedFile build(const FamilySpec& s) {
  std::ostringstream j;
  j << R"({"cone": {"kind": "orthant", "dim": 1}, "domain": {"windows": [{"lo": )" << s.lo
    << R"(, "hi": )" << s.hi << R"(, "step": )" << s.step << R"(}]}, "map": {"pieces": )" << s.map
    << R"(}, "family": {"n_max": 64, "map_n": {"pieces": )" << s.map_n << "}" << s.extra << "}}";
  return load_problem_json(Json::parse(j.str()));
}

std::string pts(const std::string& expr) { return R"([{"points": [[")" + expr + R"("]]}])"; }

std::string step_pieces(const std::string& shift) {
  return R"([{"guard": "x1 < 0", "points": [["0)" + shift + R"("]]},
             {"guard": "x1 >= 0", "points": [["1)" + shift + R"("]]}])";
}

FamilySpec step_family(const std::string& shift, bool hits_zero) {
  FamilySpec s{step_pieces(""), step_pieces(shift), ""};
  if (!hits_zero) {
    // odd multiples of 1/32: the jump sits between grid points
    s.lo = -31.0 / 32;
    s.hi = 31.0 / 32;
  }
  return s;
}

const char* kWalking = R"(, "domain_n": {"windows": [{"lo": "n", "hi": "n+1", "step": 0.0625}]})";

struct GateCase {
  std::string name;
  bool satisfying;
  std::function<TheoremReport()> run;
};

std::vector<GateCase> gate_cases() {
  const CheckOptions opt;
  auto levelset = [opt](FamilySpec s, double omega, std::function<double(long long)> omega_n,
                        int which) {
    return [=]() {
      const LoadedFile f = build(s);
      const OrderCtx ctx(f.base.cone());
      const auto reps = levelset_convergence_experiment(
          *f.family, [&](long long n) { return SetRep::point({omega_n(n)}); },
          SetRep::point({omega}), opt, ctx);
      return reps[static_cast<std::size_t>(which)];
    };
  };
  auto stability = [opt](FamilySpec s, EffKind k, Direction d) {
    return [=]() {
      const LoadedFile f = build(s);
      return stability_experiment(*f.family, k, d, opt, OrderCtx(f.base.cone()));
    };
  };
  auto set_level = [opt](FamilySpec s, Direction d) {
    return [=]() {
      const LoadedFile f = build(s);
      return geoffroy_set_experiment(*f.family, d, opt, OrderCtx(f.base.cone()));
    };
  };
  auto lsc = [opt](FamilySpec s) {
    return [=]() {
      const LoadedFile f = build(s);
      return gamma_limit_lsc_experiment(*f.family, opt, OrderCtx(f.base.cone()));
    };
  };
  auto stationary = [opt](FamilySpec s, double x) {
    return [=]() {
      const LoadedFile f = build(s);
      return stationary_gamma_experiment(*f.family, Vec{x}, opt, OrderCtx(f.base.cone()));
    };
  };

  const FamilySpec sq_up{pts("x1^2"), pts("x1^2 + 1/(n+1)"), ""};
  const FamilySpec sq_up2{pts("x1^2"), pts("x1^2 + 1/(n+1)^2"), ""};
  const FamilySpec moving_min{pts("x1^2"), pts("(x1 - 1/(n+1))^2"), R"j(, "recovery_hint": ["x1 + 1/(n+1)"])j"};
  const FamilySpec walking{pts("x1^2"), pts("x1^2"), kWalking};
  const FamilySpec sq_down{pts("x1^2"), pts("x1^2 - 1"), ""};
  const FamilySpec step_ok = step_family(" + 1/(n+1)", false);
  const FamilySpec step_up = step_family(" + 1", false);
  const FamilySpec step_zero = step_family(" + 1/(n+1)", true);
  FamilySpec step_walk = step_ok;
  step_walk.extra = kWalking;
  const std::string band = R"([{"box": {"lo": ["x1^2"], "hi": ["x1^2 + 1"]}}])";
  const std::string band_up = R"([{"box": {"lo": ["x1^2 + 1"], "hi": ["x1^2 + 2"]}}])";
  const FamilySpec still{band, band, ""};
  const FamilySpec still_up{band, band_up, ""};

  auto constant = [](double v) { return [v](long long) { return v; }; };
  auto shrinking = [](long long n) { return 0.25 + 1.0 / static_cast<double>(n + 1); };

  return {
      {"upper level sets", true, levelset(sq_up, 0.25, constant(0.25), 0)},
      {"lower level sets", true, levelset(sq_up2, 0.25, shrinking, 1)},
      {"external relaxed", true, stability(moving_min, EffKind::Relaxed, Direction::External)},
      {"internal relaxed", true, stability(moving_min, EffKind::Relaxed, Direction::Internal)},
      {"external geoffroy", true, stability(step_ok, EffKind::Geoffroy, Direction::External)},
      {"internal geoffroy", true, stability(step_ok, EffKind::Geoffroy, Direction::Internal)},
      {"external geoffroy set", true, set_level(step_ok, Direction::External)},
      {"internal geoffroy set", true, set_level(step_ok, Direction::Internal)},
      {"gamma limit lsc", true, lsc(step_ok)},
      {"stationary gamma", true, stationary(still, 0.25)},

      {"upper level sets, Omega_n above", false, levelset(sq_up, 0.25, constant(1.25), 0)},
      {"lower level sets, Omega_n = Omega", false, levelset(sq_up2, 0.25, constant(0.25), 1)},
      {"external relaxed, walking domains", false, stability(walking, EffKind::Relaxed, Direction::External)},
      {"internal relaxed, F_n below", false, stability(sq_down, EffKind::Relaxed, Direction::Internal)},
      {"external geoffroy, F_n above", false, stability(step_up, EffKind::Geoffroy, Direction::External)},
      {"internal geoffroy, walking domains", false, stability(step_walk, EffKind::Geoffroy, Direction::Internal)},
      {"external geoffroy set, jump on grid", false, set_level(step_zero, Direction::External)},
      {"internal geoffroy set, F_n above", false, set_level(step_up, Direction::Internal)},
      {"gamma limit lsc, jump on grid", false, lsc(step_zero)},
      {"stationary gamma, F_n above", false, stationary(still_up, 0.25)},
  };
}

Outcome theorem_gates(bool verbose) {
  Outcome o;
  int sat = 0, vio = 0;
  for (const GateCase& c : gate_cases()) {
    const TheoremReport t = c.run();
    bool all_hold = !t.hypotheses.empty();
    for (const Claim& h : t.hypotheses) all_hold = all_hold && h.verdict.is_holds();
    o.require(t.asserted() == all_hold, c.name + ": gate disagrees with hypotheses");
    if (!t.asserted()) o.require(t.outcome() == Status::Inconclusive, c.name + ": unasserted outcome");
    if (c.satisfying) {
      o.require(t.asserted(), c.name + ": hypotheses did not all Hold");
      o.require(t.outcome() == Status::Holds, c.name + ": conclusion check failed");
      sat += t.outcome() == Status::Holds;
    } else {
      o.require(!t.asserted(), c.name + ": violated hypothesis went undetected");
      vio += !t.asserted();
    }
    if (verbose) std::printf("    %-40s %s\n", c.name.c_str(), to_string(t.outcome()));
  }
  if (o.pass)
    o.detail = std::to_string(sat) + " satisfying families Hold, " + std::to_string(vio) +
               " violating families not asserted";
  return o;
}

// Criterion 9 ------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  RunConfig cfg;
  for (const std::string& id : repro_ids()) {
    const std::string first = dump_report(repro_report(id, cfg));
    const std::string second = dump_report(repro_report(id, cfg));
    o.require(first == second, id + ": repeated runs differ");
    const char* prev = std::getenv("SETORDER_THREADS");
    const std::string saved = prev ? prev : "";
    setenv("SETORDER_THREADS", "1", 1);
    const std::string serial = dump_report(repro_report(id, cfg));
    if (prev) setenv("SETORDER_THREADS", saved.c_str(), 1); else unsetenv("SETORDER_THREADS");
    o.require(first == serial, id + ": single-threaded run differs");
    const std::string golden =
        read_file(std::string(SETORDER_SOURCE_ROOT) + "/tests/golden/" + id + ".json");
    o.require(first == golden, id + ": differs from the stored golden report");
  }
  if (o.pass) o.detail = std::to_string(repro_ids().size()) + " repro reports byte-identical across runs and threads";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"GEff/REff example", geff_example},
      {"sin example", sin_example},
      {"cos Gamma example", cos_example},
      {"order laws", order_laws},
      {"geometry", geometry},
      {"solver oracle", solver_oracle},
      {"PK oracle", pk_oracle},
      {"theorem gates", [verbose] { return theorem_gates(verbose); }},
      {"determinism", determinism},
  };
  int failed = 0;
  int k = 0;
  for (const auto& [name, run] : criteria) {
    ++k;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d %-20s %s  %s\n", k, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
