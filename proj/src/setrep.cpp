#include "setorder/setrep.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "setorder/error.hpp"

namespace setorder {

Vec Box::lower_corner() const {
  Vec v(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) v[i] = axes[i].lo;
  return v;
}

bool Box::contains(VecView z) const {
  if (z.size() != axes.size()) throw DimensionMismatch(axes.size(), z.size());
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const Interval& iv = axes[i];
    const bool above = iv.lo_open ? z[i] > iv.lo : z[i] >= iv.lo;
    const bool below = iv.hi_open ? z[i] < iv.hi : z[i] <= iv.hi;
    if (!above || !below) return false;
  }
  return true;
}

BoxUnion::BoxUnion(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
  if (boxes_.empty()) throw InvalidSet("box union must contain a box");
  dim_ = boxes_.front().dim();
  if (dim_ == 0) throw InvalidSet("box dimension must be positive");
  for (auto& b : boxes_) {
    if (b.dim() != dim_) throw DimensionMismatch(dim_, b.dim());
    for (std::size_t i = 0; i < dim_; ++i) {
      Interval& iv = b.axes[i];
      if (!std::isfinite(iv.lo))
        throw InvalidSet("lower end on axis " + std::to_string(i) +
                         " is not finite");
      if (std::isnan(iv.hi) || iv.hi == -kInf)
        throw InvalidSet("upper end on axis " + std::to_string(i) +
                         " is invalid");
      if (iv.hi == kInf) iv.hi_open = true;
      if (iv.lo > iv.hi)
        throw InvalidSet("empty interval on axis " + std::to_string(i) +
                         ": lo > hi");
      if (iv.lo == iv.hi && (iv.lo_open || iv.hi_open))
        throw InvalidSet("degenerate interval on axis " + std::to_string(i) +
                         " must be closed");
    }
  }
}

PointCloud::PointCloud(std::vector<Vec> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidSet("point cloud must be nonempty");
  dim_ = points_.front().size();
  if (dim_ == 0) throw InvalidSet("point dimension must be positive");
  for (const auto& p : points_) {
    if (p.size() != dim_) throw DimensionMismatch(dim_, p.size());
    for (double v : p)
      if (!std::isfinite(v)) throw InvalidSet("point coordinate not finite");
  }
}

SetRep SetRep::point(Vec p) { return PointCloud({std::move(p)}); }

SetRep SetRep::box(std::vector<Interval> axes) {
  return BoxUnion({Box{std::move(axes)}});
}

std::size_t SetRep::dim() const {
  return std::visit([](const auto& r) { return r.dim(); }, rep_);
}

bool SetRep::contains(VecView z) const {
  if (is_points()) {
    for (const auto& p : points().points())
      if (std::equal(p.begin(), p.end(), z.begin(), z.end())) return true;
    return false;
  }
  for (const auto& b : boxes().boxes())
    if (b.contains(z)) return true;
  return false;
}

bool SetRep::lower_closed() const {
  if (is_points()) return true;
  for (const auto& b : boxes().boxes())
    for (const auto& iv : b.axes)
      if (iv.lo_open) return false;
  return true;
}

std::vector<Vec> SetRep::sample_points() const {
  if (is_points()) return points().points();
  std::vector<Vec> out;
  for (const auto& b : boxes().boxes()) {
    Vec lo(b.dim()), hi(b.dim()), mid(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) {
      const Interval& iv = b.axes[i];
      const double top = std::isfinite(iv.hi) ? iv.hi : iv.lo + 1.0;
      const double nudge = std::min(1e-6, (top - iv.lo) / 2.0);
      lo[i] = iv.lo_open ? iv.lo + nudge : iv.lo;
      hi[i] = (iv.hi_open || !std::isfinite(iv.hi)) ? top - nudge : top;
      mid[i] = 0.5 * (lo[i] + hi[i]);
    }
    out.push_back(std::move(lo));
    out.push_back(std::move(mid));
    out.push_back(std::move(hi));
  }
  return out;
}

UpperSet::UpperSet(const SetRep& a, const Cone& cone, bool closed)
    : cone_(cone), closure_noop_(a.is_points()) {
  if (a.dim() != cone.dim()) throw DimensionMismatch(cone.dim(), a.dim());
  if (cone.kind() == ConeKind::Orthant) {
    has_upset_ = true;
    upset_.dim = cone.dim();
    if (a.is_points()) {
      from_points_ = true;
      for (const auto& p : a.points().points())
        upset_.corners.push_back({p, std::vector<bool>(p.size(), false)});
    } else {
      for (const auto& b : a.boxes().boxes()) {
        UpSet::Corner c{b.lower_corner(), std::vector<bool>(b.dim(), false)};
        if (!closed)
          for (std::size_t i = 0; i < b.dim(); ++i)
            c.open[i] = b.axes[i].lo_open;
        upset_.corners.push_back(std::move(c));
      }
    }
    return;
  }
  if (a.is_boxes())
    throw Unsupported(
        "box unions under a general polyhedral cone are not supported; "
        "sample the set into a point cloud");
  points_ = a.points().points();
}

bool UpperSet::contains(VecView z, double tol) const {
  if (z.size() != dim()) throw DimensionMismatch(dim(), z.size());
  if (has_upset_) {
    for (const auto& c : upset_.corners) {
      bool in = true;
      for (std::size_t i = 0; i < z.size() && in; ++i) {
        const double d = z[i] - c.at[i];
        in = from_points_ ? d >= -tol : (c.open[i] ? d > 0 : d >= 0);
      }
      if (in) return true;
    }
    return false;
  }
  for (const auto& p : points_)
    if (cone_.dominates(p, z, false, tol)) return true;
  return false;
}

bool UpperSet::contains_strict(VecView z, double tol) const {
  if (z.size() != dim()) throw DimensionMismatch(dim(), z.size());
  if (has_upset_) {
    for (const auto& c : upset_.corners) {
      bool in = true;
      for (std::size_t i = 0; i < z.size() && in; ++i) {
        const double d = z[i] - c.at[i];
        in = from_points_ ? d > tol : d > 0;
      }
      if (in) return true;
    }
    return false;
  }
  for (const auto& p : points_)
    if (cone_.dominates(p, z, true, tol)) return true;
  return false;
}

bool UpperSet::contains_box(const Box& b, double tol) const {
  if (b.dim() != dim()) throw DimensionMismatch(dim(), b.dim());
  if (!has_upset_)
    throw Unsupported("box inclusion under a general polyhedral cone");
  for (const auto& c : upset_.corners) {
    bool in = true;
    for (std::size_t i = 0; i < b.dim() && in; ++i) {
      const Interval& iv = b.axes[i];
      if (from_points_) {
        in = iv.lo - c.at[i] >= -tol;
      } else {
        in = iv.lo > c.at[i] ||
             (iv.lo == c.at[i] && (!c.open[i] || iv.lo_open));
      }
    }
    if (in) return true;
  }
  return false;
}

bool UpperSet::contains_box_strict(const Box& b, double tol) const {
  if (b.dim() != dim()) throw DimensionMismatch(dim(), b.dim());
  if (!has_upset_)
    throw Unsupported("box inclusion under a general polyhedral cone");
  for (const auto& c : upset_.corners) {
    bool in = true;
    for (std::size_t i = 0; i < b.dim() && in; ++i) {
      const double d = b.axes[i].lo - c.at[i];
      in = from_points_ ? d > tol : d > 0;
    }
    if (in) return true;
  }
  return false;
}

UpperSet upset(const SetRep& a, const Cone& cone, bool closed) {
  return UpperSet(a, cone, closed);
}

bool contains_set(const UpperSet& p, const SetRep& b, double tol) {
  if (b.dim() != p.dim()) throw DimensionMismatch(p.dim(), b.dim());
  if (b.is_points()) {
    for (const auto& z : b.points().points())
      if (!p.contains(z, tol)) return false;
    return true;
  }
  for (const auto& box : b.boxes().boxes())
    if (!p.contains_box(box, tol)) return false;
  return true;
}

bool contains_set_strict(const UpperSet& p, const SetRep& b, double tol) {
  if (b.dim() != p.dim()) throw DimensionMismatch(p.dim(), b.dim());
  if (b.is_points()) {
    for (const auto& z : b.points().points())
      if (!p.contains_strict(z, tol)) return false;
    return true;
  }
  for (const auto& box : b.boxes().boxes())
    if (!p.contains_box_strict(box, tol)) return false;
  return true;
}

SetRep translate(const SetRep& a, VecView v) {
  if (v.size() != a.dim()) throw DimensionMismatch(a.dim(), v.size());
  if (a.is_points()) {
    std::vector<Vec> pts = a.points().points();
    for (auto& p : pts)
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += v[i];
    return PointCloud(std::move(pts));
  }
  std::vector<Box> boxes = a.boxes().boxes();
  for (auto& b : boxes)
    for (std::size_t i = 0; i < b.dim(); ++i) {
      b.axes[i].lo += v[i];
      b.axes[i].hi += v[i];
    }
  return BoxUnion(std::move(boxes));
}

SetRep scale(const SetRep& a, double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda))
    throw PreconditionError("scale factor must be positive and finite");
  if (a.is_points()) {
    std::vector<Vec> pts = a.points().points();
    for (auto& p : pts)
      for (double& v : p) v *= lambda;
    return PointCloud(std::move(pts));
  }
  std::vector<Box> boxes = a.boxes().boxes();
  for (auto& b : boxes)
    for (auto& iv : b.axes) {
      iv.lo *= lambda;
      iv.hi *= lambda;
    }
  return BoxUnion(std::move(boxes));
}

SetRep close_lower(const SetRep& a) {
  if (a.is_points()) return a;
  std::vector<Box> boxes = a.boxes().boxes();
  for (auto& b : boxes)
    for (auto& iv : b.axes) {
      iv.lo_open = false;
      if (iv.lo == iv.hi) iv.hi_open = false;
    }
  return BoxUnion(std::move(boxes));
}

Verdict is_c_proper(const SetRep& a, const Cone& cone) {
  if (a.dim() != cone.dim()) throw DimensionMismatch(cone.dim(), a.dim());
  const Vec& u = cone.interior_direction();
  Vec cert(cone.dim());
  if (cone.kind() == ConeKind::Orthant) {
    Vec lo(cone.dim(), kInf);
    if (a.is_points()) {
      for (const auto& p : a.points().points())
        for (std::size_t i = 0; i < p.size(); ++i) lo[i] = std::min(lo[i], p[i]);
    } else {
      for (const auto& b : a.boxes().boxes())
        for (std::size_t i = 0; i < b.dim(); ++i)
          lo[i] = std::min(lo[i], b.axes[i].lo);
    }
    for (std::size_t i = 0; i < cert.size(); ++i) cert[i] = lo[i] - u[i];
  } else if (a.is_points()) {
    // Every row margin of -t u - a is negative once t > max |g . a|.
    double big = 0.0;
    for (const auto& p : a.points().points())
      for (const auto& g : cone.rows()) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) s += g[i] * p[i];
        big = std::max(big, std::abs(s));
      }
    for (std::size_t i = 0; i < cert.size(); ++i) cert[i] = -(big + 1.0) * u[i];
  } else {
    return Verdict::inconclusive(
        "box union under a general cone: properness not decided");
  }
  if (upset(a, cone, /*closed=*/true).contains(cert, 0.0))
    return Verdict::fails("certificate point fell inside A + C",
                          Json{{"point", cert}});
  return Verdict::holds("point outside A + C", Json{{"point", cert}});
}

Json to_json(const SetRep& a) {
  if (a.is_points()) return Json{{"points", a.points().points()}};
  Json boxes = Json::array();
  for (const auto& b : a.boxes().boxes()) {
    Json lo = Json::array(), hi = Json::array(), lo_open = Json::array(),
         hi_open = Json::array();
    for (const auto& iv : b.axes) {
      lo.push_back(iv.lo);
      if (std::isfinite(iv.hi))
        hi.push_back(iv.hi);
      else
        hi.push_back("inf");
      lo_open.push_back(iv.lo_open);
      hi_open.push_back(iv.hi_open);
    }
    boxes.push_back(
        {{"lo", lo}, {"hi", hi}, {"lo_open", lo_open}, {"hi_open", hi_open}});
  }
  return Json{{"boxes", boxes}};
}

}  // namespace setorder
