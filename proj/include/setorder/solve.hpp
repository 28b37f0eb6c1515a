#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "setorder/battery.hpp"
#include "setorder/order.hpp"
#include "setorder/problem.hpp"
#include "setorder/tail.hpp"
#include "setorder/verdict.hpp"

namespace setorder {

enum class EffKind { Strong, Pareto, Geoffroy, Relaxed };

const char* to_string(EffKind k);
/// "strong", "pareto", "geoffroy", "relaxed"; throws SchemaError otherwise.
EffKind eff_kind_from_string(const std::string& s);

/// The three pairwise relations over the grid values, row i column j holding
/// R(F(x_i), F(x_j)).
class Relations {
 public:
  Relations(const Problem& p, const OrderCtx& ctx);

  std::size_t size() const { return n_; }
  bool le(std::size_t i, std::size_t j) const { return le_[i * n_ + j] != 0; }
  bool large(std::size_t i, std::size_t j) const { return large_[i * n_ + j] != 0; }
  bool strict(std::size_t i, std::size_t j) const { return strict_[i * n_ + j] != 0; }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> le_;
  std::vector<std::uint8_t> large_;
  std::vector<std::uint8_t> strict_;
};

struct EffResult {
  EffKind kind = EffKind::Strong;
  std::vector<std::size_t> indices;
  /// For every excluded index, the grid index that excludes it.
  std::map<std::size_t, std::size_t> witnesses;

  bool contains(std::size_t i) const;
  Json to_json(const Problem& p) const;
};

EffResult eff(const Relations& rel, EffKind kind);
EffResult eff(const Problem& p, EffKind kind, const OrderCtx& ctx);

/// {x : F(x) large-preceq omega} and {x : F(x) lower-preceq omega}.
std::vector<std::size_t> strong_level_set(const Problem& p, const SetRep& omega,
                                          const OrderCtx& ctx);
std::vector<std::size_t> classical_level_set(const Problem& p, const SetRep& omega,
                                             const OrderCtx& ctx);

/// Grid indices of the levels sets Lev_{F(x_i)}(F) partitioning GEff.
struct Representant {
  std::vector<std::size_t> reps;
  std::vector<std::vector<std::size_t>> parts;

  Json to_json(const Problem& p) const;
};

struct RepresentantResult {
  Verdict verdict;
  std::optional<Representant> rep;
};

/// Greedy construction, lowest index first. The verdict re-checks that the
/// parts are pairwise disjoint, cover GEff and that each strong level set at
/// a GEff point stays inside GEff.
RepresentantResult representants(const Problem& p, const Relations& rel);

/// Exists x* in lev_{F(xbar)}(F) intersected with eff(kind).
Verdict hypothesis_h(const Problem& p, const Relations& rel, EffKind kind,
                     std::size_t xbar);

/// Sampled falsification of the sequential lower converse property over
/// up to `max_pairs` seeded base pairs (xbar, x0) with F(xbar) large-preceq
/// F(x0) and battery sequences converging to each.
Verdict seq_lower_converse(const PerturbedFamily& fam, const Battery& battery,
                           const OrderCtx& ctx, const TailRule& rule,
                           int max_pairs = 64);

/// L(y) = {x : F(x) lower-preceq {y}} plus a closedness probe that halves
/// the grid step across every boundary pair.
struct LSetResult {
  std::vector<std::size_t> indices;
  Verdict closedness;
};
LSetResult l_set(const Problem& p, VecView y, const OrderCtx& ctx);

}  // namespace setorder
