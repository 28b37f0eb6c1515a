#pragma once

#include <optional>
#include <vector>

#include "setorder/battery.hpp"
#include "setorder/order.hpp"
#include "setorder/pk.hpp"
#include "setorder/problem.hpp"
#include "setorder/tail.hpp"
#include "setorder/verdict.hpp"

namespace setorder {

/// Shared knobs of every sampled convergence check.
struct CheckOptions {
  Battery battery;
  TailRule rule;
  TolSchedule tol;
  /// Lemma route neighbourhood radii R / 2^j for j = 0..max_ball_level.
  int max_ball_level = 20;
  /// Recovery grid search evaluates at most this many points per n.
  std::size_t recovery_budget = 10000;

  Json to_json() const;
};

/// Sequential lower semicontinuity: F(xbar) - eps strictly below F(x_n)
/// eventually, for every battery sequence x_n -> xbar in D and every eps on
/// the schedule.
Verdict lsc_check(const Problem& p, VecView xbar, const CheckOptions& opt,
                  const OrderCtx& ctx);
/// Sequential upper semicontinuity: F(x_n) - eps strictly below F(xbar).
Verdict usc_check(const Problem& p, VecView xbar, const CheckOptions& opt,
                  const OrderCtx& ctx);

struct GammaReport {
  Vec xbar;
  bool sequential = false;
  Verdict domains;  ///< Kuratowski pair (sequential variant only)
  Verdict lower;    ///< battery route of the lower condition
  Verdict lemma;    ///< neighbourhood route (fixed-domain variant only)
  bool routes_agree = true;
  Verdict upper;
  Json recovery = Json::object();
  std::vector<double> eps;

  Status status() const;
  Json to_json() const;
};

/// Gamma-cone convergence of the family to `limit` at xbar. Every D_n must
/// equal D. The lower condition runs over the battery and over shrinking
/// grid neighbourhoods; the upper condition uses the family's recovery hint
/// or a grid search in balls of radius R / (n + 1).
GammaReport gamma_check(const PerturbedFamily& fam, const Problem& limit,
                        VecView xbar, const CheckOptions& opt, const OrderCtx& ctx);
GammaReport gamma_check(const PerturbedFamily& fam, VecView xbar,
                        const CheckOptions& opt, const OrderCtx& ctx);

/// Sequential variant: Kuratowski pair, lower condition along x_n in D_n,
/// recovery x*_n in D_n. A precomputed Kuratowski verdict may be passed in.
GammaReport gamma_seq_check(const PerturbedFamily& fam, VecView xbar,
                            const CheckOptions& opt, const OrderCtx& ctx,
                            const Verdict* domains = nullptr);

/// D_n as a callable over the family.
DomainAt family_domains(const PerturbedFamily& fam);

}  // namespace setorder
