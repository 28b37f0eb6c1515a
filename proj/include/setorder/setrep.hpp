#pragma once

#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include "setorder/cone.hpp"
#include "setorder/verdict.hpp"

namespace setorder {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One axis of a box: an interval with per-end openness. `hi` may be +inf.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;
};

struct Box {
  std::vector<Interval> axes;

  std::size_t dim() const { return axes.size(); }
  Vec lower_corner() const;
  bool contains(VecView z) const;
};

/// Finite union of boxes. Every box is nonempty and has finite lower ends.
class BoxUnion {
 public:
  explicit BoxUnion(std::vector<Box> boxes);
  std::size_t dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Box> boxes_;
};

/// Finite nonempty point set.
class PointCloud {
 public:
  explicit PointCloud(std::vector<Vec> points);
  std::size_t dim() const { return dim_; }
  const std::vector<Vec>& points() const { return points_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Vec> points_;
};

/// A nonempty subset of R^d. Two SetReps are compared only through the order
/// relations, never structurally.
class SetRep {
 public:
  SetRep(BoxUnion b) : rep_(std::move(b)) {}  // NOLINT(implicit)
  SetRep(PointCloud p) : rep_(std::move(p)) {}  // NOLINT(implicit)

  static SetRep point(Vec p);
  static SetRep box(std::vector<Interval> axes);

  std::size_t dim() const;
  bool is_points() const { return std::holds_alternative<PointCloud>(rep_); }
  bool is_boxes() const { return std::holds_alternative<BoxUnion>(rep_); }
  const PointCloud& points() const { return std::get<PointCloud>(rep_); }
  const BoxUnion& boxes() const { return std::get<BoxUnion>(rep_); }

  /// Membership of a single point (exact openness for boxes).
  bool contains(VecView z) const;

  /// True when every lower end is closed (or the set is finite). Under the
  /// orthant cone this makes A + C closed.
  bool lower_closed() const;

  /// Finite sample of the set: the points, or per box its lower corner
  /// nudged inside on open axes plus the finite upper corner.
  std::vector<Vec> sample_points() const;

 private:
  std::variant<BoxUnion, PointCloud> rep_;
};

/// A + C (or cl(A + C)) under the orthant cone: a union of upper sets
/// prod (c_i, inf) with a per-axis open/closed lower end.
struct UpSet {
  struct Corner {
    Vec at;
    std::vector<bool> open;
  };
  std::size_t dim = 0;
  std::vector<Corner> corners;
};

/// Membership predicate for A + C (closed = false) or cl(A + C).
///
/// PointCloud A under any cone: A + C is closed, so `closed` is a no-op and
/// `closure_was_noop()` reports it. BoxUnion A needs the orthant cone; the
/// exact UpSet is available through `upset()`.
class UpperSet {
 public:
  UpperSet(const SetRep& a, const Cone& cone, bool closed);

  bool contains(VecView z, double tol = kDefaultTol) const;
  /// z in A + int(C).
  bool contains_strict(VecView z, double tol = kDefaultTol) const;
  /// Box inclusion through its decisive lower corner.
  bool contains_box(const Box& b, double tol = kDefaultTol) const;
  bool contains_box_strict(const Box& b, double tol = kDefaultTol) const;

  bool closure_was_noop() const { return closure_noop_; }
  bool has_upset() const { return has_upset_; }
  const UpSet& upset() const { return upset_; }
  std::size_t dim() const { return cone_.dim(); }

 private:
  Cone cone_;  // held by value: callers often pass temporaries
  bool closure_noop_ = false;
  bool has_upset_ = false;
  bool from_points_ = false;  ///< tolerance applies to corner comparisons
  UpSet upset_;
  std::vector<Vec> points_;
};

UpperSet upset(const SetRep& a, const Cone& cone, bool closed);

/// B subset of the upper set described by `p`.
bool contains_set(const UpperSet& p, const SetRep& b,
                  double tol = kDefaultTol);

/// B subset of A + int(C).
bool contains_set_strict(const UpperSet& p, const SetRep& b,
                         double tol = kDefaultTol);

SetRep translate(const SetRep& a, VecView v);
/// lambda * A for lambda > 0.
SetRep scale(const SetRep& a, double lambda);
/// Same set with every lower end closed (cl(A) + C = cl(A + C) under R^d_+).
SetRep close_lower(const SetRep& a);

/// A + C != R^d. Certificate: a point outside A + C.
Verdict is_c_proper(const SetRep& a, const Cone& cone);

Json to_json(const SetRep& a);

}  // namespace setorder
