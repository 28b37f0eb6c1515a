#include "setorder/solve.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "setorder/error.hpp"
#include "setorder/parallel.hpp"

namespace setorder {

const char* to_string(EffKind k) {
  switch (k) {
    case EffKind::Strong:
      return "strong";
    case EffKind::Pareto:
      return "pareto";
    case EffKind::Geoffroy:
      return "geoffroy";
    case EffKind::Relaxed:
      return "relaxed";
  }
  return "strong";
}

EffKind eff_kind_from_string(const std::string& s) {
  if (s == "strong") return EffKind::Strong;
  if (s == "pareto") return EffKind::Pareto;
  if (s == "geoffroy") return EffKind::Geoffroy;
  if (s == "relaxed") return EffKind::Relaxed;
  throw SchemaError("unknown solution kind '" + s + "'");
}

Relations::Relations(const Problem& p, const OrderCtx& ctx)
    : n_(p.size()), le_(n_ * n_), large_(n_ * n_), strict_(n_ * n_) {
  // One upper set per row: A + C and cl(A + C) are reused across columns.
  parallel_for(n_, [&](std::size_t i) {
    const SetRep& a = p.value(i);
    const UpperSet open_up = upset(a, ctx.cone, false);
    const UpperSet closed_up = upset(a, ctx.cone, true);
    for (std::size_t j = 0; j < n_; ++j) {
      const SetRep& b = p.value(j);
      le_[i * n_ + j] = contains_set(open_up, b, ctx.tol) ? 1 : 0;
      large_[i * n_ + j] = contains_set(closed_up, b, ctx.tol) ? 1 : 0;
      strict_[i * n_ + j] = contains_set_strict(open_up, b, ctx.tol) ? 1 : 0;
    }
  });
}

bool EffResult::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

Json EffResult::to_json(const Problem& p) const {
  Json pts = Json::array();
  for (std::size_t i : indices) pts.push_back(p.point(i));
  Json wit = Json::array();
  for (const auto& [excluded, by] : witnesses)
    wit.push_back(Json{{"excluded", excluded}, {"by", by}});
  return Json{{"kind", setorder::to_string(kind)},
              {"count", indices.size()},
              {"indices", indices},
              {"points", pts},
              {"witnesses", wit}};
}

EffResult eff(const Relations& rel, EffKind kind) {
  EffResult r;
  r.kind = kind;
  const std::size_t n = rel.size();
  for (std::size_t xb = 0; xb < n; ++xb) {
    std::optional<std::size_t> by;
    for (std::size_t x = 0; x < n && !by; ++x) {
      switch (kind) {
        case EffKind::Strong:
          if (!rel.le(xb, x)) by = x;
          break;
        case EffKind::Pareto:
          if (rel.le(x, xb) && !rel.le(xb, x)) by = x;
          break;
        case EffKind::Geoffroy:
          if (rel.large(x, xb) && !rel.large(xb, x)) by = x;
          break;
        case EffKind::Relaxed:
          if (rel.strict(x, xb)) by = x;
          break;
      }
    }
    if (by)
      r.witnesses[xb] = *by;
    else
      r.indices.push_back(xb);
  }
  return r;
}

EffResult eff(const Problem& p, EffKind kind, const OrderCtx& ctx) {
  return eff(Relations(p, ctx), kind);
}

std::vector<std::size_t> strong_level_set(const Problem& p, const SetRep& omega,
                                          const OrderCtx& ctx) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (large_le(p.value(i), omega, ctx)) out.push_back(i);
  return out;
}

std::vector<std::size_t> classical_level_set(const Problem& p, const SetRep& omega,
                                             const OrderCtx& ctx) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (lower_le(p.value(i), omega, ctx)) out.push_back(i);
  return out;
}

Json Representant::to_json(const Problem& p) const {
  Json out = Json::array();
  for (std::size_t k = 0; k < reps.size(); ++k)
    out.push_back(Json{{"rep", reps[k]}, {"point", p.point(reps[k])}, {"part", parts[k]}});
  return out;
}

RepresentantResult representants(const Problem& p, const Relations& rel) {
  const EffResult g = eff(rel, EffKind::Geoffroy);
  if (g.indices.empty())
    return {Verdict::fails("GEff is empty on the grid", Json::object()), std::nullopt};

  Representant rep;
  std::vector<int> owner(rel.size(), -1);
  std::set<std::size_t> unassigned(g.indices.begin(), g.indices.end());
  while (!unassigned.empty()) {
    const std::size_t x = *unassigned.begin();
    // Lev_{F(x)}(F) over the whole grid; it must stay inside GEff.
    std::vector<std::size_t> part;
    for (std::size_t i = 0; i < rel.size(); ++i) {
      if (!rel.large(i, x)) continue;
      if (!g.contains(i))
        return {Verdict::fails("level set at a GEff point leaves GEff",
                               Json{{"rep", x}, {"outside", i}}),
                std::nullopt};
      if (owner[i] >= 0)
        return {Verdict::fails("level sets overlap",
                               Json{{"rep", x},
                                    {"other_rep", rep.reps[static_cast<std::size_t>(owner[i])]},
                                    {"shared", i}}),
                std::nullopt};
      part.push_back(i);
    }
    for (std::size_t i : part) {
      owner[i] = static_cast<int>(rep.reps.size());
      unassigned.erase(i);
    }
    if (owner[x] < 0)
      return {Verdict::fails("representant outside its own level set", Json{{"rep", x}}),
              std::nullopt};
    rep.reps.push_back(x);
    rep.parts.push_back(std::move(part));
  }
  for (std::size_t i : g.indices)
    if (owner[i] < 0)
      return {Verdict::fails("parts do not cover GEff", Json{{"uncovered", i}}), std::nullopt};

  Json ev{{"representants", rep.to_json(p)}};
  return {Verdict::holds("parts are disjoint and cover GEff", std::move(ev)), rep};
}

Verdict hypothesis_h(const Problem& p, const Relations& rel, EffKind kind,
                     std::size_t xbar) {
  const EffResult e = eff(rel, kind);
  if (e.indices.empty())
    return Verdict::inconclusive(std::string(to_string(kind)) + " solution set is empty");
  for (std::size_t i : e.indices)
    if (rel.le(i, xbar))
      return Verdict::holds("solution inside the level set",
                            Json{{"xbar", p.point(xbar)}, {"x_star", p.point(i)}});
  return Verdict::fails("level set misses every solution",
                        Json{{"xbar", p.point(xbar)}, {"solutions", e.indices.size()}});
}

Verdict seq_lower_converse(const PerturbedFamily& fam, const Battery& battery,
                           const OrderCtx& ctx, const TailRule& rule, int max_pairs) {
  if (rule.horizon > fam.n_max())
    throw HorizonExceeded("horizon exceeds the family's n_max");
  const Problem& base = fam.base();
  const Relations rel(base, ctx);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < base.size(); ++a)
    for (std::size_t b = 0; b < base.size(); ++b)
      if (rel.large(a, b)) pairs.emplace_back(a, b);
  // Seeded partial Fisher-Yates with plain modulo draws (portable).
  std::mt19937_64 rng(battery.seed ^ 0x5eed1c0fULL);
  const std::size_t keep = std::min(pairs.size(), static_cast<std::size_t>(max_pairs));
  for (std::size_t k = 0; k < keep; ++k) {
    const std::size_t j = k + static_cast<std::size_t>(rng() % (pairs.size() - k));
    std::swap(pairs[k], pairs[j]);
  }
  pairs.resize(keep);
  std::sort(pairs.begin(), pairs.end());

  const DomainAt domain_at = [&](long long n) -> const Domain& { return fam.domain_at(n); };
  const double width = base.domain().width();
  struct Found {
    bool hit = false;
    Json ce;
  };
  std::vector<Found> found(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [a, b] = pairs[k];
    const auto xs = generate(battery, base.point(a), domain_at, rule.horizon, width);
    const auto phis = generate(battery, base.point(b), domain_at, rule.horizon, width);
    for (int n = rule.lo(); n <= rule.horizon; ++n) {
      std::vector<SetRep> fx;
      std::vector<SetRep> fphi;
      for (const auto& s : xs) fx.push_back(fam.value_n(n, s.points[static_cast<std::size_t>(n)]));
      for (const auto& s : phis) fphi.push_back(fam.value_n(n, s.points[static_cast<std::size_t>(n)]));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < phis.size(); ++j) {
          if (large_le(fx[i], fphi[j], ctx)) continue;
          found[k].hit = true;
          found[k].ce = Json{{"xbar", base.point(a)},
                             {"x0", base.point(b)},
                             {"n", n},
                             {"x_n", xs[i].points[static_cast<std::size_t>(n)]},
                             {"phi_n", phis[j].points[static_cast<std::size_t>(n)]},
                             {"x_sequence", xs[i].certificate(battery.seed)},
                             {"phi_sequence", phis[j].certificate(battery.seed)}};
          return;
        }
      }
    }
  });
  for (const auto& f : found)
    if (f.hit)
      return Verdict::fails("F_n(x_n) large-preceq F_n(phi_n) fails in the tail", f.ce, true);
  return Verdict::holds("no counterexample on the battery",
                        Json{{"pairs", pairs.size()}, {"battery", battery.to_json()}}, true);
}

LSetResult l_set(const Problem& p, VecView y, const OrderCtx& ctx) {
  LSetResult r;
  const SetRep single = SetRep::point(Vec(y.begin(), y.end()));
  std::vector<char> member(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    member[i] = lower_le(p.value(i), single, ctx) ? 1 : 0;
    if (member[i]) r.indices.push_back(i);
  }
  const Domain& d = p.domain();
  if (!d.is_grid()) {
    r.closedness = Verdict::inconclusive("closedness probe needs a grid domain", {}, true);
    return r;
  }
  // Product grid, last axis fastest.
  const auto& ws = d.window_list();
  std::vector<std::size_t> count(ws.size());
  for (std::size_t a = 0; a < ws.size(); ++a) count[a] = window_grid(ws[a]).size();
  std::vector<std::size_t> stride(ws.size(), 1);
  for (std::size_t a = ws.size(); a-- > 1;) stride[a - 1] = stride[a] * count[a];

  Json probes = Json::array();
  bool stable = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t a = 0; a < ws.size(); ++a) {
      const std::size_t coord = (i / stride[a]) % count[a];
      if (coord + 1 >= count[a]) continue;
      const std::size_t j = i + stride[a];
      if (member[i] == member[j]) continue;
      Vec mid(p.point(i).size());
      for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (p.point(i)[k] + p.point(j)[k]);
      const bool in = lower_le(p.evaluate(mid), single, ctx);
      // The refined point must side with one neighbour; a flip in both
      // directions cannot occur for a set with a single crossing.
      probes.push_back(Json{{"inside", member[i] ? i : j},
                            {"outside", member[i] ? j : i},
                            {"midpoint", mid},
                            {"midpoint_inside", in}});
      if (probes.size() > 256) stable = false;
    }
  }
  Json ev{{"boundary_pairs", probes.size()}, {"probes", probes}};
  if (!stable)
    r.closedness = Verdict::inconclusive("too many boundary pairs to probe", std::move(ev), true);
  else
    r.closedness = Verdict::holds("membership resolved at half step on every boundary pair",
                                  std::move(ev), true);
  return r;
}

}  // namespace setorder
