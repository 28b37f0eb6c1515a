#include "setorder/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "setorder/error.hpp"

namespace setorder {
namespace {

double dot(VecView a, VecView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double min_margin(const std::vector<Vec>& rows, VecView u) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& g : rows) m = std::min(m, dot(g, u));
  return m;
}

bool is_axis_set(const std::vector<Vec>& rows, std::size_t dim) {
  if (rows.size() != dim) return false;
  std::vector<bool> seen(dim, false);
  for (const auto& g : rows) {
    std::size_t hot = dim;
    for (std::size_t i = 0; i < dim; ++i) {
      if (g[i] == 1.0 && hot == dim) {
        hot = i;
      } else if (g[i] != 0.0) {
        return false;
      }
    }
    if (hot == dim || seen[hot]) return false;
    seen[hot] = true;
  }
  return true;
}

// Projected subgradient ascent on u -> min_i g_i . u over the box |u_j| <= 1.
// Restart 0 starts from the mean row, the others from seeded random points.
Vec search_interior(const std::vector<Vec>& rows, std::size_t dim) {
  constexpr int kRestarts = 16;
  constexpr int kIters = 4000;
  std::mt19937_64 rng(0x5EEDC0DEULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  Vec best(dim, 0.0);
  double best_t = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < kRestarts; ++r) {
    Vec u(dim, 0.0);
    if (r == 0) {
      for (const auto& g : rows)
        for (std::size_t i = 0; i < dim; ++i) u[i] += g[i];
      double scale = 0.0;
      for (double v : u) scale = std::max(scale, std::abs(v));
      if (scale > 0)
        for (double& v : u) v /= scale;
    } else {
      for (double& v : u) v = unif(rng);
    }
    for (int k = 1; k <= kIters; ++k) {
      const double t = min_margin(rows, u);
      if (t > best_t) {
        best_t = t;
        best = u;
      }
      Vec sub(dim, 0.0);
      int active = 0;
      for (const auto& g : rows) {
        if (dot(g, u) <= t + 1e-12) {
          for (std::size_t i = 0; i < dim; ++i) sub[i] += g[i];
          ++active;
        }
      }
      const double step = 0.5 / std::sqrt(static_cast<double>(k)) / active;
      for (std::size_t i = 0; i < dim; ++i)
        u[i] = std::clamp(u[i] + step * sub[i], -1.0, 1.0);
    }
  }
  if (!(best_t > 1e-9)) {
    throw NotSolid("cone has empty interior (best margin " +
                   std::to_string(best_t) + ")");
  }
  for (double& v : best) v /= best_t;
  return best;
}

// Lawson-Hanson nonnegative least squares: min |A x - b|, x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = a.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  constexpr double kTol = 1e-12;

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k)
      ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
    Eigen::VectorXd sp = ap.colPivHouseholderQr().solve(b);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k)
      s(idx[k]) = sp(static_cast<Eigen::Index>(k));
    return s;
  };

  for (int outer = 0; outer < 3 * n + 3; ++outer) {
    Eigen::VectorXd w = a.transpose() * (b - a * x);
    Eigen::Index pick = -1;
    double wmax = kTol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w(j) > wmax) {
        wmax = w(j);
        pick = j;
      }
    }
    if (pick < 0) break;
    passive[static_cast<std::size_t>(pick)] = true;
    for (int inner = 0; inner < 3 * n + 3; ++inner) {
      Eigen::VectorXd s = solve_passive();
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && s(j) <= kTol)
          feasible = false;
      if (feasible) {
        x = s;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s(j) <= kTol) {
          const double denom = x(j) - s(j);
          if (denom > 0) alpha = std::min(alpha, x(j) / denom);
        }
      }
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x(j) <= kTol) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
      }
    }
  }
  return x;
}

}  // namespace

Cone::Cone(std::size_t dim, std::vector<Vec> rows, ConeKind kind)
    : dim_(dim), rows_(std::move(rows)), kind_(kind) {}

Cone Cone::orthant(std::size_t dim) {
  if (dim == 0) throw InvalidSet("cone dimension must be positive");
  std::vector<Vec> rows(dim, Vec(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) rows[i][i] = 1.0;
  Cone c(dim, std::move(rows), ConeKind::Orthant);
  c.interior_ = Vec(dim, 1.0);
  return c;
}

Cone Cone::from_halfspaces(std::vector<Vec> rows) {
  if (rows.empty()) throw InvalidSet("cone needs at least one halfspace");
  const std::size_t dim = rows.front().size();
  if (dim == 0) throw InvalidSet("cone dimension must be positive");
  for (auto& g : rows) {
    if (g.size() != dim) throw DimensionMismatch(dim, g.size());
    double norm = 0.0;
    for (double v : g) {
      if (!std::isfinite(v)) throw InvalidSet("halfspace row is not finite");
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) throw InvalidSet("halfspace row is zero");
    for (double& v : g) v /= norm;
  }
  if (is_axis_set(rows, dim)) return orthant(dim);
  Cone c(dim, rows, ConeKind::General);
  c.interior_ = search_interior(c.rows_, dim);
  return c;
}

double Cone::margin(VecView z) const {
  if (z.size() != dim_) throw DimensionMismatch(dim_, z.size());
  if (kind_ == ConeKind::Orthant) {
    double m = std::numeric_limits<double>::infinity();
    for (double v : z) m = std::min(m, v);
    return m;
  }
  return min_margin(rows_, z);
}

bool Cone::contains(VecView z, double tol) const {
  return margin(z) >= -tol;
}

bool Cone::contains_interior(VecView z, double tol) const {
  return margin(z) > tol;
}

bool Cone::dominates(VecView a, VecView b, bool strict, double tol) const {
  if (a.size() != dim_) throw DimensionMismatch(dim_, a.size());
  if (b.size() != dim_) throw DimensionMismatch(dim_, b.size());
  Vec diff(dim_);
  for (std::size_t i = 0; i < dim_; ++i) diff[i] = b[i] - a[i];
  return strict ? contains_interior(diff, tol) : contains(diff, tol);
}

Vec find_interior_direction(const Cone& cone) {
  if (cone.kind() == ConeKind::Orthant) return Vec(cone.dim(), 1.0);
  return search_interior(cone.rows(), cone.dim());
}

long long scale_witness(const Cone& cone, VecView c, VecView u, double tol) {
  if (c.size() != cone.dim()) throw DimensionMismatch(cone.dim(), c.size());
  if (u.size() != cone.dim()) throw DimensionMismatch(cone.dim(), u.size());
  if (!cone.contains(c, tol))
    throw PreconditionError("scale_witness: c is not in the cone");
  if (!cone.contains_interior(u, tol))
    throw PreconditionError("scale_witness: u is not in the cone interior");

  auto ok = [&](long long n) {
    Vec z(cone.dim());
    for (std::size_t i = 0; i < z.size(); ++i)
      z[i] = u[i] / 2.0 - c[i] / static_cast<double>(n);
    return cone.contains(z, 0.0);
  };

  double need = 1.0;
  for (const auto& g : cone.rows()) {
    const double gc = dot(g, c);
    const double gu = dot(g, u);
    if (gc > 0) need = std::max(need, 2.0 * gc / gu);
  }
  constexpr long long kCap = 1LL << 52;
  long long n = static_cast<long long>(std::min(std::ceil(need), 4.0e15));
  n = std::max(n, 1LL);
  while (n > 1 && ok(n - 1)) --n;
  while (!ok(n)) {
    if (n >= kCap) throw PreconditionError("scale_witness: no finite N found");
    ++n;
  }
  return n;
}

bool cone_subset(const Cone& inner, const Cone& outer, double tol) {
  if (inner.dim() != outer.dim())
    throw DimensionMismatch(inner.dim(), outer.dim());
  const auto d = static_cast<Eigen::Index>(inner.dim());
  const auto m = static_cast<Eigen::Index>(inner.rows().size());
  Eigen::MatrixXd a(d, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < d; ++i)
      a(i, j) = inner.rows()[static_cast<std::size_t>(j)]
                            [static_cast<std::size_t>(i)];
  for (const auto& h : outer.rows()) {
    Eigen::VectorXd b(d);
    for (Eigen::Index i = 0; i < d; ++i) b(i) = h[static_cast<std::size_t>(i)];
    const Eigen::VectorXd lambda = nnls(a, b);
    if ((a * lambda - b).norm() > tol) return false;
  }
  return true;
}

FinenessWitness fineness_witness(const Cone& c1, const Cone& c2, VecView u2,
                                 double tol) {
  if (u2.size() != c2.dim()) throw DimensionMismatch(c2.dim(), u2.size());
  if (!cone_subset(c1, c2))
    throw ContainmentNotEstablished(
        "fineness_witness: C1 is not contained in C2");
  if (!c2.contains_interior(u2, tol))
    throw PreconditionError("fineness_witness: u2 is not in int(C2)");

  FinenessWitness w;
  w.u1 = c1.interior_direction();
  w.n = scale_witness(c2, w.u1, u2, tol);
  auto build = [&] {
    w.u = w.u1;
    for (double& v : w.u) v /= static_cast<double>(w.n);
  };
  build();
  while (!c2.dominates(w.u, u2, /*strict=*/true, 0.0)) {
    ++w.n;
    build();
  }
  return w;
}

}  // namespace setorder
