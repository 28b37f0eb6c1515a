#include "setorder/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "setorder/error.hpp"
#include "setorder/experiments.hpp"

namespace setorder {
namespace {

OrderCtx make_ctx(const Cone& cone, const RunConfig& cfg) { return OrderCtx(cone, cfg.tol); }

CheckOptions make_opts(const RunConfig& cfg) {
  CheckOptions opt;
  opt.battery.seed = cfg.seed;
  opt.rule.horizon = cfg.horizon;
  if (cfg.horizon < 8) throw SchemaError("--horizon must be at least 8");
  return opt;
}

Json base_report(const RunConfig& cfg, const std::string& command, const Domain* d) {
  ReportHeader h;
  h.command = command;
  h.tol = cfg.tol;
  h.horizon = cfg.horizon;
  h.seed = cfg.seed;
  if (d != nullptr) h.grid = grid_json(*d);
  return Json{{"header", header_json(h)}};
}

const std::string& first_input(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw SchemaError(cfg.command + " needs a problem file");
  return cfg.inputs.front();
}

const PerturbedFamily& need_family(const LoadedFile& f) {
  if (!f.family) throw SchemaError("problem file has no 'family' section");
  return *f.family;
}

Json parse_literal(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::exception& e) {
    throw SchemaError("malformed JSON in '" + path + "': " + e.what());
  }
}

std::vector<EffKind> kinds_of(const std::string& k, bool stability) {
  if (k == "all")
    return stability ? std::vector<EffKind>{EffKind::Relaxed, EffKind::Geoffroy}
                     : std::vector<EffKind>{EffKind::Strong, EffKind::Pareto,
                                            EffKind::Geoffroy, EffKind::Relaxed};
  return {eff_kind_from_string(k)};
}

std::vector<Direction> directions_of(const std::string& d) {
  if (d == "both") return {Direction::External, Direction::Internal};
  if (d == "external") return {Direction::External};
  if (d == "internal") return {Direction::Internal};
  throw SchemaError("--direction must be external, internal or both");
}

int status_exit(Status s) {
  switch (s) {
    case Status::Holds:
      return kExitHolds;
    case Status::Fails:
      return kExitFails;
    case Status::Inconclusive:
      break;
  }
  return kExitInconclusive;
}

bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Solver invariants that hold on every instance.
Json solver_invariants(const Problem& p, const Relations& rel, bool& ok) {
  const EffResult s = eff(rel, EffKind::Strong);
  const EffResult pa = eff(rel, EffKind::Pareto);
  const EffResult g = eff(rel, EffKind::Geoffroy);
  const EffResult r = eff(rel, EffKind::Relaxed);
  const bool g_in_r = subset(g.indices, r.indices);
  const bool s_eq_p = s.indices.empty() || s.indices == pa.indices;
  const bool closed = p.c_closed_valued();
  const bool p_eq_g = !closed || pa.indices == g.indices;
  ok = g_in_r && s_eq_p && p_eq_g;
  return Json{{"geoffroy_inside_relaxed", g_in_r},
              {"strong_nonempty_implies_strong_equals_pareto", s_eq_p},
              {"c_closed_valued", closed},
              {"c_closed_implies_pareto_equals_geoffroy", p_eq_g}};
}

CommandResult cmd_compare(const RunConfig& cfg) {
  Json cj;
  Json aj;
  Json bj;
  if (!cfg.inputs.empty()) {
    const Json f = read_json_file(cfg.inputs.front());
    if (!f.is_object() || !f.contains("cone") || !f.contains("a") || !f.contains("b"))
      throw SchemaError("compare file needs 'cone', 'a' and 'b'");
    cj = f.at("cone");
    aj = f.at("a");
    bj = f.at("b");
  } else {
    if (cfg.set_a.empty() || cfg.set_b.empty() || cfg.cone.empty())
      throw SchemaError("compare needs a file or --a, --b and --cone");
    cj = parse_literal(cfg.cone, "--cone");
    aj = parse_literal(cfg.set_a, "--a");
    bj = parse_literal(cfg.set_b, "--b");
  }
  const Cone cone = cone_from_json(cj);
  const SetRep a = setrep_from_json(aj);
  const SetRep b = setrep_from_json(bj);
  if (a.dim() != cone.dim() || b.dim() != cone.dim())
    throw SchemaError("set dimension differs from the cone dimension");
  const OrderCtx ctx = make_ctx(cone, cfg);
  auto rels = [&](const SetRep& x, const SetRep& y) {
    return Json{{"lower_le", lower_le(x, y, ctx)},
                {"large_le", large_le(x, y, ctx)},
                {"strict_lt", strict_lt(x, y, ctx)},
                {"equiv", equiv(x, y, ctx)}};
  };
  Json rep = base_report(cfg, "compare", nullptr);
  rep["a"] = to_json(a);
  rep["b"] = to_json(b);
  rep["a_vs_b"] = rels(a, b);
  rep["b_vs_a"] = rels(b, a);
  return {rep, kExitHolds, ""};
}

CommandResult cmd_solve(const RunConfig& cfg) {
  const LoadedFile f = load_problem(first_input(cfg));
  const OrderCtx ctx = make_ctx(f.base.cone(), cfg);
  const Relations rel(f.base, ctx);
  Json rep = base_report(cfg, "solve", &f.base.domain());
  rep["label"] = f.base.label();
  rep["solutions"] = Json::array();
  for (EffKind k : kinds_of(cfg.kind, false))
    rep["solutions"].push_back(eff(rel, k).to_json(f.base));
  bool ok = true;
  rep["invariants"] = solver_invariants(f.base, rel, ok);
  const RepresentantResult reps = representants(f.base, rel);
  rep["representants"] = to_json(reps.verdict);
  return {rep, ok ? kExitHolds : kExitFails, ""};
}

CommandResult cmd_levelset(const RunConfig& cfg) {
  const LoadedFile f = load_problem(first_input(cfg));
  const OrderCtx ctx = make_ctx(f.base.cone(), cfg);
  Json rep = base_report(cfg, "levelset", &f.base.domain());
  if (!cfg.omega.empty() || cfg.at) {
    const SetRep omega = !cfg.omega.empty()
                             ? setrep_from_json(parse_literal(cfg.omega, "--omega"))
                             : f.base.evaluate(*cfg.at);
    const auto strong = strong_level_set(f.base, omega, ctx);
    const auto classical = classical_level_set(f.base, omega, ctx);
    rep["omega"] = to_json(omega);
    rep["strong_level_set"] = strong;
    rep["classical_level_set"] = classical;
  }
  if (cfg.y) {
    const LSetResult l = l_set(f.base, *cfg.y, ctx);
    rep["l_set"] = Json{{"y", *cfg.y}, {"indices", l.indices}, {"closedness", to_json(l.closedness)}};
  }
  if (!rep.contains("omega") && !rep.contains("l_set"))
    throw SchemaError("levelset needs --omega, --at or --y");
  return {rep, kExitHolds, ""};
}

CommandResult cmd_gamma(const RunConfig& cfg) {
  const LoadedFile f = load_problem(first_input(cfg));
  const PerturbedFamily& fam = need_family(f);
  const OrderCtx ctx = make_ctx(f.base.cone(), cfg);
  const CheckOptions opt = make_opts(cfg);
  std::vector<Vec> points;
  if (cfg.at)
    points.push_back(*cfg.at);
  else
    points = f.base.grid();
  const bool fixed = fam.fixed_domain();
  std::optional<Verdict> domains;
  if (!fixed)
    domains = kuratowski_pair(family_domains(fam), f.base.domain(), opt.rule, opt.tol);
  Json rep = base_report(cfg, "gamma", &f.base.domain());
  rep["options"] = opt.to_json();
  rep["reports"] = Json::array();
  Status total = Status::Holds;
  for (const auto& x : points) {
    const GammaReport g = fixed ? gamma_check(fam, x, opt, ctx)
                                : gamma_seq_check(fam, x, opt, ctx, &*domains);
    total = combine(total, g.status());
    rep["reports"].push_back(g.to_json());
  }
  rep["outcome"] = to_string(total);
  return {rep, status_exit(total), ""};
}

CommandResult cmd_pk(const RunConfig& cfg) {
  const LoadedFile f = load_problem(first_input(cfg));
  const PerturbedFamily& fam = need_family(f);
  const CheckOptions opt = make_opts(cfg);
  if (opt.rule.horizon > fam.n_max()) throw SchemaError("--horizon exceeds the family's n_max");
  PointSeq seq;
  for (int n = 0; n <= opt.rule.horizon; ++n) seq.push_back(fam.domain_at(n).grid());
  const auto& cand = f.base.grid();
  const PKReport pk = pk_limits(seq, cand, opt.rule, opt.tol, &cand);
  const Verdict kp = kuratowski_pair(family_domains(fam), f.base.domain(), opt.rule, opt.tol);
  Json rep = base_report(cfg, "pk", &f.base.domain());
  rep["domain_limits"] = pk.to_json(cand);
  rep["kuratowski_pair"] = to_json(kp);
  rep["outcome"] = to_string(kp.status);
  return {rep, status_exit(kp.status), ""};
}

CommandResult cmd_stability(const RunConfig& cfg) {
  const LoadedFile f = load_problem(first_input(cfg));
  const PerturbedFamily& fam = need_family(f);
  const OrderCtx ctx = make_ctx(f.base.cone(), cfg);
  const CheckOptions opt = make_opts(cfg);
  Json rep = base_report(cfg, "stability", &f.base.domain());
  rep["options"] = opt.to_json();
  rep["theorems"] = Json::array();
  std::vector<Status> outcomes;
  if (cfg.set_level) {
    for (Direction d : directions_of(cfg.direction)) {
      const TheoremReport t = geoffroy_set_experiment(fam, d, opt, ctx);
      outcomes.push_back(t.outcome());
      rep["theorems"].push_back(t.to_json());
    }
  } else {
    const Verdict gseq = gamma_seq_everywhere(fam, opt, ctx);
    for (EffKind k : kinds_of(cfg.kind, true)) {
      for (Direction d : directions_of(cfg.direction)) {
        const TheoremReport t = stability_experiment(fam, k, d, opt, ctx, &gseq);
        outcomes.push_back(t.outcome());
        rep["theorems"].push_back(t.to_json());
      }
    }
  }
  const int code = exit_code(outcomes);
  rep["outcome"] = code == 0 ? "holds" : code == 1 ? "fails" : "inconclusive";
  return {rep, code, ""};
}

CommandResult cmd_levelset_conv(const RunConfig& cfg) {
  const LoadedFile f = load_problem(first_input(cfg));
  const PerturbedFamily& fam = need_family(f);
  const OrderCtx ctx = make_ctx(f.base.cone(), cfg);
  const CheckOptions opt = make_opts(cfg);
  SetSeq omega_n;
  std::optional<SetRep> omega;
  if (cfg.at) {
    const Vec x = *cfg.at;
    omega = f.base.evaluate(x);
    omega_n = [&fam, x](long long n) { return fam.value_n(n, x); };
  } else if (!cfg.omega.empty()) {
    omega = setrep_from_json(parse_literal(cfg.omega, "--omega"));
    const SetRep om = *omega;
    omega_n = [om](long long) { return om; };
  } else {
    throw SchemaError("levelset-conv needs --at or --omega");
  }
  Json rep = base_report(cfg, "levelset-conv", &f.base.domain());
  rep["options"] = opt.to_json();
  rep["theorems"] = Json::array();
  std::vector<Status> outcomes;
  for (const auto& t : levelset_convergence_experiment(fam, omega_n, *omega, opt, ctx)) {
    outcomes.push_back(t.outcome());
    rep["theorems"].push_back(t.to_json());
  }
  const int code = exit_code(outcomes);
  rep["outcome"] = code == 0 ? "holds" : code == 1 ? "fails" : "inconclusive";
  return {rep, code, ""};
}

std::string problems_dir(const RunConfig& cfg) {
  return cfg.problems_dir.empty() ? std::string(SETORDER_SOURCE_ROOT) + "/problems"
                                  : cfg.problems_dir;
}

Json repro_geff(const RunConfig& cfg) {
  const LoadedFile f = load_problem(problems_dir(cfg) + "/geff_vs_reff.json");
  const OrderCtx ctx = make_ctx(f.base.cone(), cfg);
  const Relations rel(f.base, ctx);
  const EffResult g = eff(rel, EffKind::Geoffroy);
  const EffResult r = eff(rel, EffKind::Relaxed);
  std::size_t g_mismatch = 0;
  std::size_t r_mismatch = 0;
  for (std::size_t i = 0; i < f.base.size(); ++i) {
    const double x = f.base.point(i)[0];
    if (g.contains(i) != (x <= 0.0 || x >= 2.0)) ++g_mismatch;
    if (!r.contains(i)) ++r_mismatch;
  }
  bool ok = true;
  Json rep = base_report(cfg, "repro geff-example", &f.base.domain());
  rep["geoffroy"] = g.to_json(f.base);
  rep["relaxed"] = r.to_json(f.base);
  rep["expected"] = Json{{"geoffroy", "grid points with x <= 0 or x >= 2"},
                         {"relaxed", "every grid point"}};
  rep["mismatches"] = Json{{"geoffroy", g_mismatch}, {"relaxed", r_mismatch}};
  rep["invariants"] = solver_invariants(f.base, rel, ok);
  rep["representants"] = to_json(representants(f.base, rel).verdict);
  rep["outcome"] = (ok && g_mismatch == 0 && r_mismatch == 0) ? "holds" : "fails";
  return rep;
}

Json repro_gamma_cos(const RunConfig& cfg) {
  const LoadedFile f = load_problem(problems_dir(cfg) + "/gamma_cos.json");
  const PerturbedFamily& fam = need_family(f);
  const OrderCtx ctx = make_ctx(f.base.cone(), cfg);
  const CheckOptions opt = make_opts(cfg);
  const GammaReport g = gamma_check(fam, Vec{0.0}, opt, ctx);
  Json rep = base_report(cfg, "repro gamma-cos", &f.base.domain());
  rep["options"] = opt.to_json();
  rep["gamma"] = g.to_json();
  const bool ok = g.lower.is_holds() && g.upper.is_holds() && g.routes_agree;
  rep["outcome"] = ok ? "holds" : to_string(combine(g.status(), Status::Inconclusive));
  return rep;
}

Json repro_sop_sin(const RunConfig& cfg) {
  const LoadedFile f = load_problem(problems_dir(cfg) + "/sop_sin.json");
  const PerturbedFamily& fam = need_family(f);
  const OrderCtx ctx = make_ctx(f.base.cone(), cfg);
  const CheckOptions opt = make_opts(cfg);
  const EffResult r = eff(f.base, EffKind::Relaxed, ctx);
  const bool r_ok = r.indices.size() == 1 && f.base.point(r.indices[0])[0] == 0.0;
  const Verdict kp = kuratowski_pair(family_domains(fam), f.base.domain(), opt.rule, opt.tol);
  const Verdict gseq = gamma_seq_everywhere(fam, opt, ctx);
  const TheoremReport ext =
      stability_experiment(fam, EffKind::Relaxed, Direction::External, opt, ctx, &gseq);
  const TheoremReport in =
      stability_experiment(fam, EffKind::Relaxed, Direction::Internal, opt, ctx, &gseq);

  Json rep = base_report(cfg, "repro sop-sin-stability", &f.base.domain());
  rep["options"] = opt.to_json();
  rep["relaxed_base"] = r.to_json(f.base);
  rep["relaxed_base_is_zero"] = r_ok;
  rep["kuratowski_pair"] = to_json(kp);
  rep["gamma_seq"] = to_json(gseq);
  rep["external_relaxed"] = ext.to_json();
  rep["internal_relaxed"] = in.to_json();
  const bool ok = r_ok && kp.is_holds() && gseq.is_holds() && ext.asserted() &&
                  ext.outcome() == Status::Holds && in.asserted() &&
                  in.outcome() == Status::Holds;
  rep["outcome"] = ok ? "holds" : "fails";
  return rep;
}

CommandResult cmd_repro(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw SchemaError("repro needs exactly one example id");
  const std::string& id = cfg.inputs.front();
  const Json rep = repro_report(id, cfg);
  const std::string text = dump_report(rep);
  const std::string dir = cfg.golden_dir.empty()
                              ? std::string(SETORDER_SOURCE_ROOT) + "/tests/golden"
                              : cfg.golden_dir;
  const std::string path = dir + "/" + id + ".json";
  CommandResult res{rep, rep.at("outcome") == "holds" ? kExitHolds : kExitFails, ""};
  if (cfg.update) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaError("cannot write golden file '" + path + "'");
    out << text;
    res.message = "golden updated: " + path;
    return res;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    res.message = "golden missing: " + path;
    res.exit_code = kExitFails;
    return res;
  }
  std::ostringstream golden;
  golden << in.rdbuf();
  if (golden.str() != text) {
    res.message = "report differs from golden " + path;
    res.exit_code = kExitFails;
  } else {
    res.message = "report matches golden " + path;
  }
  return res;
}

}  // namespace

const std::vector<std::string>& repro_ids() {
  static const std::vector<std::string> ids{"geff-example", "gamma-cos", "sop-sin-stability"};
  return ids;
}

Json repro_report(const std::string& id, const RunConfig& cfg) {
  if (id == "geff-example") return repro_geff(cfg);
  if (id == "gamma-cos") return repro_gamma_cos(cfg);
  if (id == "sop-sin-stability") return repro_sop_sin(cfg);
  throw SchemaError("unknown example id '" + id + "'");
}

CommandResult run_command(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "table" && cfg.format != "both")
    throw SchemaError("--format must be json, table or both");
  if (!(cfg.tol >= 0)) throw SchemaError("--tol must be nonnegative");
  if (cfg.command == "compare") return cmd_compare(cfg);
  if (cfg.command == "solve") return cmd_solve(cfg);
  if (cfg.command == "levelset") return cmd_levelset(cfg);
  if (cfg.command == "gamma") return cmd_gamma(cfg);
  if (cfg.command == "pk") return cmd_pk(cfg);
  if (cfg.command == "stability") return cmd_stability(cfg);
  if (cfg.command == "levelset-conv") return cmd_levelset_conv(cfg);
  if (cfg.command == "repro") return cmd_repro(cfg);
  throw SchemaError("unknown command '" + cfg.command + "'");
}

}  // namespace setorder
