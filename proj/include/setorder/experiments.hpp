#pragma once

#include <functional>
#include <string>
#include <vector>

#include "setorder/gamma.hpp"
#include "setorder/solve.hpp"

namespace setorder {

struct Claim {
  std::string name;
  Verdict verdict;
};

/// Hypothesis and conclusion verdicts of one theorem run. A conclusion is
/// asserted only when every hypothesis Holds; otherwise the outcome is
/// Inconclusive whatever the conclusions say.
struct TheoremReport {
  std::string theorem;
  std::vector<Claim> hypotheses;
  std::vector<Claim> conclusions;
  Json details = Json::object();

  bool asserted() const;
  Status outcome() const;
  Json to_json() const;
};

/// Gamma-convergence at every grid point of D (fixed domain).
Verdict gamma_everywhere(const PerturbedFamily& fam, const CheckOptions& opt,
                         const OrderCtx& ctx);
/// Sequential Gamma-convergence at every grid point of D.
Verdict gamma_seq_everywhere(const PerturbedFamily& fam, const CheckOptions& opt,
                             const OrderCtx& ctx);

using SetSeq = std::function<SetRep(long long n)>;

/// Upper and lower convergence of strong level sets Lev_{Omega_n}(F_n)
/// towards Lev_Omega(F). Returns the upper report then the lower report.
std::vector<TheoremReport> levelset_convergence_experiment(
    const PerturbedFamily& fam, const SetSeq& omega_n, const SetRep& omega,
    const CheckOptions& opt, const OrderCtx& ctx);

enum class Direction { External, Internal };
const char* to_string(Direction d);

/// Pointwise stability theorems for relaxed and Geoffroy minimal solutions.
/// A precomputed gamma_seq_everywhere verdict may be passed in.
TheoremReport stability_experiment(const PerturbedFamily& fam, EffKind kind,
                                   Direction dir, const CheckOptions& opt,
                                   const OrderCtx& ctx,
                                   const Verdict* gamma_seq = nullptr);

/// Set-level theorems for GEff: external (upper PK limit of
/// Lev_{F(x_n)}(F_n) inside GEff) and internal (GEff inside the lower limit).
/// Both require a finite representant as an added hypothesis.
TheoremReport geoffroy_set_experiment(const PerturbedFamily& fam, Direction dir,
                                      const CheckOptions& opt, const OrderCtx& ctx);

/// Gamma-limits are lower semicontinuous: Gamma-convergence at every grid
/// point must yield lsc of the limit at every grid point.
TheoremReport gamma_limit_lsc_experiment(const PerturbedFamily& fam,
                                         const CheckOptions& opt, const OrderCtx& ctx);

/// F_n equivalent to F on the grid and F continuous at xbar yields
/// Gamma-convergence at xbar.
TheoremReport stationary_gamma_experiment(const PerturbedFamily& fam, VecView xbar,
                                          const CheckOptions& opt, const OrderCtx& ctx);

/// Report outcome to exit code: 0 asserted and Holds, 1 some Fails,
/// 2 Inconclusive only.
int exit_code(const std::vector<Status>& outcomes);

}  // namespace setorder
