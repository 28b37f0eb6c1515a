#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "setorder/cone.hpp"
#include "setorder/expr.hpp"
#include "setorder/setrep.hpp"
#include "setorder/verdict.hpp"

namespace setorder {

/// Upper endpoints above this magnitude are treated as +inf.
inline constexpr double kInfThreshold = 1e15;

/// One axis of a grid domain. Grid points are lo + j * step for j = 0, 1, ...
/// while the point stays at or below hi (strictly below when hi_open). A
/// point within 1e-12 * max(1, |hi|) of a closed hi is snapped to hi.
struct Window {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;
  bool hi_open = false;
  bool truncated = false;  ///< stands for an unbounded set
};

std::vector<double> window_grid(const Window& w);

/// Finite discretization of a subset of R^k: a product grid over windows or
/// an explicit point list.
class Domain {
 public:
  static Domain windows(std::vector<Window> ws);
  static Domain points(std::vector<Vec> pts);

  std::size_t dim() const { return dim_; }
  bool is_grid() const { return !windows_.empty(); }
  const std::vector<Window>& window_list() const { return windows_; }
  const std::vector<Vec>& grid() const { return grid_; }
  bool truncated() const;
  /// Largest window width (or bounding-box extent of a point list).
  double width() const;
  bool contains(VecView x) const;
  /// Nearest point of the domain (clamp for windows, nearest for points).
  Vec project(VecView x) const;
  Json to_json() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Window> windows_;
  std::vector<Vec> grid_;
};

/// x -> F(x) or, for families, (x, n) -> F_n(x).
class SetValuedMap {
 public:
  using Fn = std::function<SetRep(VecView, std::optional<long long>)>;

  /// Guarded piece of an expression-backed map. Exactly one of `box` and
  /// `points` is set.
  struct AxisSpec {
    Expr lo;
    Expr hi;
    bool lo_open = false;
    bool hi_open = false;
  };
  struct Piece {
    Guard guard;
    std::optional<std::vector<AxisSpec>> box;
    std::optional<std::vector<std::vector<Expr>>> points;
  };

  SetValuedMap(std::size_t xdim, std::size_t image_dim, Fn fn,
               Json description = Json::object());
  static SetValuedMap from_pieces(std::size_t xdim, std::size_t image_dim,
                                  std::vector<Piece> pieces);
  /// Table-backed map; evaluation away from the listed points throws
  /// NoMatchingPiece.
  static SetValuedMap table(std::vector<Vec> xs, std::vector<SetRep> values);

  SetRep operator()(VecView x, std::optional<long long> n = std::nullopt) const;
  std::size_t xdim() const { return xdim_; }
  std::size_t image_dim() const { return image_dim_; }
  const Json& description() const { return description_; }

 private:
  std::size_t xdim_;
  std::size_t image_dim_;
  Fn fn_;
  Json description_;
};

/// SOP(F, C, D): values on the grid are computed once at construction.
class Problem {
 public:
  /// Throws SchemaError naming x when no piece matches, a value is malformed,
  /// or a value is not C-proper.
  Problem(std::string label, Cone cone, Domain domain, SetValuedMap map,
          std::optional<long long> n = std::nullopt);

  const std::string& label() const { return label_; }
  const Cone& cone() const { return cone_; }
  const Domain& domain() const { return domain_; }
  const SetValuedMap& map() const { return map_; }
  std::optional<long long> index() const { return n_; }

  std::size_t size() const { return values_.size(); }
  const std::vector<Vec>& grid() const { return domain_.grid(); }
  const Vec& point(std::size_t i) const { return domain_.grid()[i]; }
  const SetRep& value(std::size_t i) const { return values_[i]; }
  /// F(x) (or F_n(x)) at an arbitrary point.
  SetRep evaluate(VecView x) const { return map_(x, n_); }
  /// Index of the grid point nearest to x.
  std::size_t nearest(VecView x) const;
  /// All values are lower-closed (C-closed under the orthant cone).
  bool c_closed_valued() const;

 private:
  std::string label_;
  Cone cone_;
  Domain domain_;
  SetValuedMap map_;
  std::optional<long long> n_;
  std::vector<SetRep> values_;
};

/// {SOP(F_n, C, D_n)}: the cone is shared, the map and domain depend on n.
class PerturbedFamily {
 public:
  using DomainFn = std::function<Domain(long long)>;
  using RecoveryFn = std::function<Vec(VecView xbar, long long n)>;

  /// Builds the member problems for n = 0..n_max. Throws PreconditionError
  /// when n_max < 8.
  PerturbedFamily(Problem base, SetValuedMap map_n, DomainFn domain_n,
                  int n_max, std::optional<RecoveryFn> recovery = std::nullopt,
                  Json description = Json::object());

  const Problem& base() const { return base_; }
  int n_max() const { return n_max_; }
  /// Throws HorizonExceeded outside 0..n_max.
  const Problem& family_at(long long n) const;
  /// F_n evaluated at an arbitrary point.
  SetRep value_n(long long n, VecView x) const { return map_n_(x, n); }
  const Domain& domain_at(long long n) const { return family_at(n).domain(); }
  /// Every D_n equals D.
  bool fixed_domain() const;
  const std::optional<RecoveryFn>& recovery() const { return recovery_; }
  const Json& description() const { return description_; }
  const SetValuedMap& map_n() const { return map_n_; }

 private:
  Problem base_;
  SetValuedMap map_n_;
  int n_max_;
  std::optional<RecoveryFn> recovery_;
  Json description_;
  std::vector<Problem> members_;
};

struct LoadedFile {
  Problem base;
  std::optional<PerturbedFamily> family;
  Json source;
};

/// Parses a problem file. All errors surface as SchemaError (or ParseError
/// for malformed expressions).
LoadedFile load_problem(const std::string& path);
LoadedFile load_problem_json(const Json& j);

Cone cone_from_json(const Json& j);
SetRep setrep_from_json(const Json& j);

}  // namespace setorder
