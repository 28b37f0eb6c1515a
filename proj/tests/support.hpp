#pragma once

// Independent reference implementations used as oracles. Nothing here calls
// the library's order predicates: relations are decided by sampling the
// definitions directly on lattice-valued instances.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "setorder/cone.hpp"
#include "setorder/order.hpp"
#include "setorder/problem.hpp"
#include "setorder/setrep.hpp"
#include "setorder/solve.hpp"

namespace oracle {

using setorder::Box;
using setorder::Cone;
using setorder::Interval;
using setorder::SetRep;
using setorder::Vec;

// Coordinates live on this lattice so that exact ties are common and every
// non-tie is far above the tolerances.
inline constexpr double kLattice = 0.25;
// Nudge into open lower ends; far below kLattice, far above 1e-9.
inline constexpr double kNudge = 1e-6;

inline double lattice(std::mt19937_64& rng, int lo = -8, int hi = 8) {
  return kLattice * std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Vec random_point(std::mt19937_64& rng, std::size_t d) {
  Vec v(d);
  for (double& c : v) c = lattice(rng);
  return v;
}

inline SetRep random_points(std::mt19937_64& rng, std::size_t d, int max_count = 6) {
  const int k = std::uniform_int_distribution<int>(1, max_count)(rng);
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) pts.push_back(random_point(rng, d));
  return setorder::PointCloud(std::move(pts));
}

inline SetRep random_boxes(std::mt19937_64& rng, std::size_t d, int max_count = 6) {
  const int k = std::uniform_int_distribution<int>(1, max_count)(rng);
  std::bernoulli_distribution coin(0.5);
  std::vector<Box> boxes;
  for (int i = 0; i < k; ++i) {
    Box b;
    for (std::size_t a = 0; a < d; ++a) {
      Interval iv;
      iv.lo = lattice(rng);
      const int len = std::uniform_int_distribution<int>(0, 6)(rng);
      iv.lo_open = len > 0 && coin(rng);
      iv.hi_open = len > 0 && coin(rng);
      iv.hi = len == 6 ? setorder::kInf : iv.lo + kLattice * len;
      if (len == 6) iv.hi_open = true;
      b.axes.push_back(iv);
    }
    boxes.push_back(std::move(b));
  }
  return setorder::BoxUnion(std::move(boxes));
}

// Solid cone whose rows are perturbed coordinate axes, so the orthant's
// interior direction stays strictly inside.
inline Cone random_cone(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> noise(-0.3, 0.3);
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < d; ++i) {
    Vec g(d, 0.0);
    g[i] = 1.0;
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) g[j] = std::round(noise(rng) * 4.0) / 4.0;
    rows.push_back(std::move(g));
  }
  return Cone::from_halfspaces(std::move(rows));
}

// Representative points of B: every point of a cloud; per box its lower
// corner (nudged inside along open axes), an interior point and the finite
// upper corner. For a union of translated cones, containment of a box is
// decided by its lower corner, so these samples suffice for the orthant.
// With `raw`, open ends are not nudged (for relations blind to openness).
inline std::vector<Vec> samples(const SetRep& b, bool raw = false) {
  if (b.is_points()) return b.points().points();
  std::vector<Vec> out;
  for (const auto& box : b.boxes().boxes()) {
    Vec lo;
    Vec mid;
    Vec hi;
    for (const auto& iv : box.axes) {
      const double nudge = raw ? 0.0 : kNudge;
      lo.push_back(iv.lo_open ? iv.lo + nudge : iv.lo);
      const double top = std::isinf(iv.hi) ? iv.lo + 3.0 : iv.hi;
      mid.push_back(0.5 * (iv.lo + top));
      hi.push_back(iv.hi_open ? top - nudge : top);
    }
    out.push_back(lo);
    out.push_back(mid);
    out.push_back(hi);
  }
  return out;
}

inline double margin(const Cone& c, const Vec& z) {
  double m = setorder::kInf;
  for (const auto& g : c.rows()) {
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += g[i] * z[i];
    m = std::min(m, s);
  }
  return m;
}

enum class Mode { Plain, Closure, Interior };

// z in A + C (Plain), cl(A + C) (Closure) or A + int C (Interior).
inline bool in_upper(const Cone& c, const SetRep& a, const Vec& z, Mode mode,
                     double tol = 1e-9) {
  if (a.is_points()) {
    for (const auto& p : a.points().points()) {
      Vec diff(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) diff[i] = z[i] - p[i];
      const double m = margin(c, diff);
      if (mode == Mode::Interior ? m > tol : m >= -tol) return true;
    }
    return false;
  }
  // Boxes under the orthant: z in box + C iff z dominates the lower corner
  // with the box's openness (ignored for the closure and the interior).
  for (const auto& box : a.boxes().boxes()) {
    bool ok = true;
    for (std::size_t i = 0; i < z.size() && ok; ++i) {
      const auto& iv = box.axes[i];
      if (mode == Mode::Interior)
        ok = z[i] > iv.lo + tol;
      else if (mode == Mode::Plain && iv.lo_open)
        ok = z[i] > iv.lo;
      else
        ok = z[i] >= iv.lo - tol;
    }
    if (ok) return true;
  }
  return false;
}

inline bool lower_le(const Cone& c, const SetRep& a, const SetRep& b) {
  for (const auto& z : samples(b))
    if (!in_upper(c, a, z, Mode::Plain)) return false;
  return true;
}

inline bool large_le(const Cone& c, const SetRep& a, const SetRep& b) {
  for (const auto& z : samples(b))
    if (!in_upper(c, a, z, Mode::Closure)) return false;
  return true;
}

// Uniform strictness: some eps = t u with B inside A + eps + C. On lattice
// data a fixed small t decides it.
inline bool strict_lt(const Cone& c, const SetRep& a, const SetRep& b) {
  const Vec& u = c.interior_direction();
  const double t = 1e-4;
  for (Vec z : samples(b, /*raw=*/true)) {
    for (std::size_t i = 0; i < z.size(); ++i) z[i] -= t * u[i];
    if (!in_upper(c, a, z, Mode::Closure, 0.0)) return false;
  }
  return true;
}

// Definitional minimal-solution sets over precomputed values.
inline std::vector<std::size_t> eff(const Cone& c, const std::vector<SetRep>& v,
                                    setorder::EffKind kind) {
  using setorder::EffKind;
  std::vector<std::size_t> out;
  const std::size_t n = v.size();
  for (std::size_t xb = 0; xb < n; ++xb) {
    bool keep = true;
    for (std::size_t x = 0; x < n && keep; ++x) {
      switch (kind) {
        case EffKind::Strong:
          keep = lower_le(c, v[xb], v[x]);
          break;
        case EffKind::Pareto:
          keep = !lower_le(c, v[x], v[xb]) || lower_le(c, v[xb], v[x]);
          break;
        case EffKind::Geoffroy:
          keep = !large_le(c, v[x], v[xb]) || large_le(c, v[xb], v[x]);
          break;
        case EffKind::Relaxed:
          keep = !strict_lt(c, v[x], v[xb]);
          break;
      }
    }
    if (keep) out.push_back(xb);
  }
  return out;
}

// Cluster points of a finite candidate list along an eventually periodic
// sequence: Li is what every period member contains, Ls what some contains.
inline void periodic_limits(const std::vector<std::vector<int>>& period_members,
                            std::size_t candidates, std::vector<std::size_t>& li,
                            std::vector<std::size_t>& ls) {
  li.clear();
  ls.clear();
  for (std::size_t c = 0; c < candidates; ++c) {
    std::size_t hits = 0;
    for (const auto& m : period_members)
      if (std::find(m.begin(), m.end(), static_cast<int>(c)) != m.end()) ++hits;
    if (hits == period_members.size()) li.push_back(c);
    if (hits > 0) ls.push_back(c);
  }
}

}  // namespace oracle
