#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace setorder {

using Vec = std::vector<double>;
using VecView = std::span<const double>;

inline constexpr double kDefaultTol = 1e-9;

enum class ConeKind { Orthant, General };

/// Solid closed convex polyhedral cone C = {z : g_i . z >= 0 for all i}.
///
/// Rows are normalized to unit Euclidean norm at construction, so tolerances
/// measure signed distance to each bounding hyperplane. The interior
/// direction u satisfies min_i g_i . u = 1.
class Cone {
 public:
  /// The nonnegative orthant R^d_+.
  static Cone orthant(std::size_t dim);

  /// Throws InvalidSet on zero rows or ragged input, NotSolid when no interior
  /// direction is found. Rows equal to the coordinate axes yield Orthant kind.
  static Cone from_halfspaces(std::vector<Vec> rows);

  std::size_t dim() const { return dim_; }
  ConeKind kind() const { return kind_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const Vec& interior_direction() const { return interior_; }

  /// min_i g_i . z
  double margin(VecView z) const;

  bool contains(VecView z, double tol = kDefaultTol) const;
  bool contains_interior(VecView z, double tol = kDefaultTol) const;

  /// a <=_C b (b - a in C), or a <_C b (b - a in int C) when strict.
  bool dominates(VecView a, VecView b, bool strict,
                 double tol = kDefaultTol) const;

 private:
  Cone(std::size_t dim, std::vector<Vec> rows, ConeKind kind);

  std::size_t dim_ = 0;
  std::vector<Vec> rows_;
  Vec interior_;
  ConeKind kind_ = ConeKind::General;
};

/// Searches for u with min_i g_i . u > 0 and returns it scaled so the minimum
/// margin is exactly 1. Orthant cones return the all-ones vector.
/// Throws NotSolid when the best margin found is <= 1e-9.
Vec find_interior_direction(const Cone& cone);

/// Smallest N >= 1 with u/2 - c/N in C. Requires c in C, u in int(C).
long long scale_witness(const Cone& cone, VecView c, VecView u,
                        double tol = kDefaultTol);

/// Result of the constructive step behind "tau^{C1} finer than tau^{C2}".
struct FinenessWitness {
  long long n = 1;
  Vec u1;  ///< interior direction of C1
  Vec u;   ///< u1 / n; lies in int(C1) and satisfies u <_{C2} u2
};

/// Requires C1 subset of C2 (established through the dual-cone test) and
/// u2 in int(C2). Throws ContainmentNotEstablished or PreconditionError.
FinenessWitness fineness_witness(const Cone& c1, const Cone& c2, VecView u2,
                                 double tol = kDefaultTol);

/// True when every row of `outer` is a nonnegative combination of the rows
/// of `inner` (Farkas: inner subset of outer), up to `tol` residual.
bool cone_subset(const Cone& inner, const Cone& outer, double tol = 1e-7);

}  // namespace setorder
