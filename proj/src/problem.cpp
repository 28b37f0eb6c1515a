#include "setorder/problem.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "setorder/error.hpp"
#include "setorder/parallel.hpp"

namespace setorder {
namespace {

constexpr std::size_t kMaxGridPoints = 1'000'000;

std::string fmt_num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string fmt_vec(VecView x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) s += ", ";
    s += fmt_num(x[i]);
  }
  return s + ")";
}

double normalize_hi(double hi, bool& hi_open) {
  if (hi > kInfThreshold) {
    hi_open = true;
    return kInf;
  }
  return hi;
}

}  // namespace

std::vector<double> window_grid(const Window& w) {
  if (!std::isfinite(w.lo) || !std::isfinite(w.hi))
    throw SchemaError("window ends must be finite");
  if (!(w.step > 0) || !std::isfinite(w.step))
    throw SchemaError("window step must be positive");
  if (w.hi < w.lo) throw SchemaError("window has hi < lo");
  const double slack = 1e-12 * std::max(1.0, std::abs(w.hi));
  std::vector<double> out;
  for (std::size_t j = 0;; ++j) {
    double v = w.lo + static_cast<double>(j) * w.step;
    if (w.hi_open) {
      if (!(v < w.hi - slack)) break;
    } else {
      if (v > w.hi + slack) break;
      if (std::abs(v - w.hi) <= slack) v = w.hi;
    }
    out.push_back(v);
    if (out.size() > kMaxGridPoints)
      throw SchemaError("window grid exceeds the point cap");
  }
  if (out.empty()) throw SchemaError("window grid is empty");
  return out;
}

Domain Domain::windows(std::vector<Window> ws) {
  if (ws.empty()) throw SchemaError("domain needs at least one window");
  Domain d;
  d.dim_ = ws.size();
  std::vector<std::vector<double>> axes;
  std::size_t total = 1;
  for (const auto& w : ws) {
    axes.push_back(window_grid(w));
    total *= axes.back().size();
    if (total > kMaxGridPoints)
      throw SchemaError("domain grid exceeds the point cap");
  }
  d.windows_ = std::move(ws);
  d.grid_.reserve(total);
  std::vector<std::size_t> idx(d.dim_, 0);
  for (std::size_t p = 0; p < total; ++p) {
    Vec x(d.dim_);
    for (std::size_t i = 0; i < d.dim_; ++i) x[i] = axes[i][idx[i]];
    d.grid_.push_back(std::move(x));
    for (std::size_t i = d.dim_; i-- > 0;) {
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
    }
  }
  return d;
}

Domain Domain::points(std::vector<Vec> pts) {
  if (pts.empty()) throw SchemaError("domain point list is empty");
  Domain d;
  d.dim_ = pts.front().size();
  if (d.dim_ == 0) throw SchemaError("domain points must have dimension >= 1");
  for (const auto& p : pts) {
    if (p.size() != d.dim_) throw SchemaError("domain points have ragged dimensions");
    for (double v : p)
      if (!std::isfinite(v)) throw SchemaError("domain point is not finite");
  }
  d.grid_ = std::move(pts);
  return d;
}

bool Domain::truncated() const {
  return std::any_of(windows_.begin(), windows_.end(),
                     [](const Window& w) { return w.truncated; });
}

double Domain::width() const {
  double r = 0.0;
  if (is_grid()) {
    for (const auto& w : windows_) r = std::max(r, w.hi - w.lo);
    return r;
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    double lo = kInf, hi = -kInf;
    for (const auto& p : grid_) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
    r = std::max(r, hi - lo);
  }
  return r;
}

bool Domain::contains(VecView x) const {
  if (x.size() != dim_) throw DimensionMismatch(dim_, x.size());
  if (!is_grid()) {
    for (const auto& p : grid_)
      if (std::equal(p.begin(), p.end(), x.begin(), x.end())) return true;
    return false;
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    const Window& w = windows_[i];
    if (x[i] < w.lo) return false;
    if (w.hi_open ? !(x[i] < w.hi) : x[i] > w.hi) return false;
  }
  return true;
}

Vec Domain::project(VecView x) const {
  if (x.size() != dim_) throw DimensionMismatch(dim_, x.size());
  if (!is_grid()) {
    std::size_t best = 0;
    double best_d = kInf;
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i)
        s += (grid_[k][i] - x[i]) * (grid_[k][i] - x[i]);
      if (s < best_d) {
        best_d = s;
        best = k;
      }
    }
    return grid_[best];
  }
  Vec out(x.begin(), x.end());
  for (std::size_t i = 0; i < dim_; ++i) {
    const Window& w = windows_[i];
    const double top = w.hi_open ? std::nextafter(w.hi, -kInf) : w.hi;
    out[i] = std::clamp(out[i], w.lo, std::max(w.lo, top));
  }
  return out;
}

Json Domain::to_json() const {
  Json j;
  if (is_grid()) {
    Json ws = Json::array();
    for (const auto& w : windows_)
      ws.push_back({{"lo", w.lo},
                    {"hi", w.hi},
                    {"step", w.step},
                    {"hi_open", w.hi_open},
                    {"truncated", w.truncated}});
    j["windows"] = ws;
  } else {
    j["points"] = grid_;
  }
  j["size"] = grid_.size();
  return j;
}

SetValuedMap::SetValuedMap(std::size_t xdim, std::size_t image_dim, Fn fn,
                           Json description)
    : xdim_(xdim),
      image_dim_(image_dim),
      fn_(std::move(fn)),
      description_(std::move(description)) {}

SetValuedMap SetValuedMap::from_pieces(std::size_t xdim, std::size_t image_dim,
                                       std::vector<Piece> pieces) {
  if (pieces.empty()) throw SchemaError("map needs at least one piece");
  Json desc = Json::array();
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const Piece& p = pieces[k];
    if (p.box.has_value() == p.points.has_value())
      throw SchemaError("piece " + std::to_string(k) +
                        " must have exactly one of box and points");
    Json pj;
    pj["guard"] = p.guard.unparse();
    if (p.box) {
      if (p.box->size() != image_dim)
        throw SchemaError("piece " + std::to_string(k) + " box has wrong dimension");
      Json axes = Json::array();
      for (const auto& a : *p.box)
        axes.push_back({{"lo", a.lo.unparse()},
                        {"hi", a.hi.unparse()},
                        {"lo_open", a.lo_open},
                        {"hi_open", a.hi_open}});
      pj["box"] = axes;
    } else {
      if (p.points->empty())
        throw SchemaError("piece " + std::to_string(k) + " has no points");
      Json pts = Json::array();
      for (const auto& row : *p.points) {
        if (row.size() != image_dim)
          throw SchemaError("piece " + std::to_string(k) +
                            " point has wrong dimension");
        Json r = Json::array();
        for (const auto& e : row) r.push_back(e.unparse());
        pts.push_back(r);
      }
      pj["points"] = pts;
    }
    desc.push_back(pj);
  }
  auto shared = std::make_shared<const std::vector<Piece>>(std::move(pieces));
  Fn fn = [shared, image_dim](VecView x,
                              std::optional<long long> n) -> SetRep {
    const Env env{x, n};
    for (std::size_t k = 0; k < shared->size(); ++k) {
      const Piece& p = (*shared)[k];
      if (!p.guard.eval(env)) continue;
      if (p.box) {
        std::vector<Interval> axes;
        axes.reserve(image_dim);
        for (const auto& a : *p.box) {
          Interval iv;
          iv.lo = a.lo.eval(env);
          iv.lo_open = a.lo_open;
          iv.hi_open = a.hi_open;
          iv.hi = normalize_hi(a.hi.eval(env), iv.hi_open);
          axes.push_back(iv);
        }
        return SetRep::box(std::move(axes));
      }
      std::vector<Vec> pts;
      for (const auto& row : *p.points) {
        Vec v;
        for (const auto& e : row) v.push_back(e.eval(env));
        pts.push_back(std::move(v));
      }
      return PointCloud(std::move(pts));
    }
    throw NoMatchingPiece("no piece matches x = " + fmt_vec(x));
  };
  return SetValuedMap(xdim, image_dim, std::move(fn), Json{{"pieces", desc}});
}

SetValuedMap SetValuedMap::table(std::vector<Vec> xs, std::vector<SetRep> values) {
  if (xs.empty() || xs.size() != values.size())
    throw SchemaError("table map needs one value per point");
  const std::size_t xdim = xs.front().size();
  const std::size_t image_dim = values.front().dim();
  Json desc{{"table", xs.size()}};
  auto keys = std::make_shared<const std::vector<Vec>>(std::move(xs));
  auto vals = std::make_shared<const std::vector<SetRep>>(std::move(values));
  Fn fn = [keys, vals](VecView x, std::optional<long long>) -> SetRep {
    for (std::size_t k = 0; k < keys->size(); ++k)
      if (std::equal((*keys)[k].begin(), (*keys)[k].end(), x.begin(), x.end()))
        return (*vals)[k];
    throw NoMatchingPiece("table has no entry at x = " + fmt_vec(x));
  };
  return SetValuedMap(xdim, image_dim, std::move(fn), desc);
}

SetRep SetValuedMap::operator()(VecView x, std::optional<long long> n) const {
  if (x.size() != xdim_) throw DimensionMismatch(xdim_, x.size());
  SetRep v = fn_(x, n);
  if (v.dim() != image_dim_) throw DimensionMismatch(image_dim_, v.dim());
  return v;
}

Problem::Problem(std::string label, Cone cone, Domain domain, SetValuedMap map,
                 std::optional<long long> n)
    : label_(std::move(label)),
      cone_(std::move(cone)),
      domain_(std::move(domain)),
      map_(std::move(map)),
      n_(n) {
  if (map_.xdim() != domain_.dim())
    throw SchemaError("map and domain dimensions differ");
  if (map_.image_dim() != cone_.dim())
    throw SchemaError("map image dimension differs from the cone dimension");
  const auto& g = domain_.grid();
  std::vector<std::optional<SetRep>> slots(g.size());
  parallel_for(g.size(), [&](std::size_t i) {
    const std::string where = " at x = " + fmt_vec(g[i]);
    try {
      SetRep v = map_(g[i], n_);
      const Verdict proper = is_c_proper(v, cone_);
      if (proper.is_inconclusive())
        throw SchemaError("C-properness cannot be decided" + where + ": " +
                          proper.reason);
      if (!proper.is_holds())
        throw SchemaError("value is not C-proper" + where);
      slots[i] = std::move(v);
    } catch (const NoMatchingPiece&) {
      throw SchemaError("no piece covers x = " + fmt_vec(g[i]));
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(std::string(e.what()) + where);
    }
  });
  values_.reserve(g.size());
  for (auto& s : slots) values_.push_back(std::move(*s));
}

std::size_t Problem::nearest(VecView x) const {
  std::size_t best = 0;
  double best_d = kInf;
  for (std::size_t k = 0; k < size(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      s += (point(k)[i] - x[i]) * (point(k)[i] - x[i]);
    if (s < best_d) {
      best_d = s;
      best = k;
    }
  }
  return best;
}

bool Problem::c_closed_valued() const {
  if (cone_.kind() != ConeKind::Orthant) {
    return std::all_of(values_.begin(), values_.end(),
                       [](const SetRep& v) { return v.is_points(); });
  }
  return std::all_of(values_.begin(), values_.end(),
                     [](const SetRep& v) { return v.lower_closed(); });
}

PerturbedFamily::PerturbedFamily(Problem base, SetValuedMap map_n,
                                 DomainFn domain_n, int n_max,
                                 std::optional<RecoveryFn> recovery,
                                 Json description)
    : base_(std::move(base)),
      map_n_(std::move(map_n)),
      n_max_(n_max),
      recovery_(std::move(recovery)),
      description_(std::move(description)) {
  if (n_max_ < 8) throw PreconditionError("family horizon must be at least 8");
  members_.reserve(static_cast<std::size_t>(n_max_) + 1);
  for (long long n = 0; n <= n_max_; ++n)
    members_.emplace_back(base_.label() + "[n=" + std::to_string(n) + "]",
                          base_.cone(), domain_n(n), map_n_, n);
}

const Problem& PerturbedFamily::family_at(long long n) const {
  if (n < 0 || n > n_max_)
    throw HorizonExceeded("n = " + std::to_string(n) + " outside 0.." +
                          std::to_string(n_max_));
  return members_[static_cast<std::size_t>(n)];
}

bool PerturbedFamily::fixed_domain() const {
  for (const auto& m : members_)
    if (m.grid() != base_.grid()) return false;
  return true;
}

// ---------------------------------------------------------------- loading

namespace {

Expr expr_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return Expr::constant(j.get<double>());
  if (j.is_string()) return Expr::parse(j.get<std::string>());
  throw SchemaError(where + ": expected a number or expression string");
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(where + ": missing field '" + key + "'");
  return j.at(key);
}

bool flag(const Json& j, const char* key, bool dflt) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_boolean())
    throw SchemaError(std::string("field '") + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

void check_vars(std::size_t max_x, bool uses_n, std::size_t xdim, bool allow_n,
                const std::string& where) {
  if (max_x > xdim)
    throw SchemaError(where + ": x" + std::to_string(max_x) +
                      " exceeds the domain dimension " + std::to_string(xdim));
  if (uses_n && !allow_n)
    throw SchemaError(where + ": n is only bound inside a family");
}

struct WindowSpec {
  Expr lo, hi, step;
  bool hi_open = false;
  bool truncated = false;
};

struct DomainSpec {
  std::vector<WindowSpec> windows;
  std::vector<Vec> points;

  Domain at(std::optional<long long> n) const {
    if (windows.empty()) return Domain::points(points);
    std::vector<Window> ws;
    const Env env{{}, n};
    for (const auto& s : windows)
      ws.push_back({s.lo.eval(env), s.hi.eval(env), s.step.eval(env),
                    s.hi_open, s.truncated});
    return Domain::windows(std::move(ws));
  }
  std::size_t dim() const {
    return windows.empty() ? points.front().size() : windows.size();
  }
};

DomainSpec domain_spec(const Json& j, bool allow_n, const std::string& where) {
  DomainSpec d;
  if (j.contains("windows")) {
    const Json& ws = j.at("windows");
    if (!ws.is_array() || ws.empty())
      throw SchemaError(where + ".windows must be a nonempty array");
    for (const auto& w : ws) {
      WindowSpec s{expr_from_json(need(w, "lo", where), where + ".lo"),
                   expr_from_json(need(w, "hi", where), where + ".hi"),
                   expr_from_json(need(w, "step", where), where + ".step"),
                   flag(w, "hi_open", false), flag(w, "truncated", false)};
      for (const Expr* e : {&s.lo, &s.hi, &s.step})
        check_vars(e->max_x_index(), e->uses_n(), 0, allow_n, where);
      d.windows.push_back(std::move(s));
    }
  } else if (j.contains("points")) {
    try {
      d.points = j.at("points").get<std::vector<Vec>>();
    } catch (const Json::exception&) {
      throw SchemaError(where + ".points must be an array of number arrays");
    }
    if (d.points.empty()) throw SchemaError(where + ".points is empty");
  } else {
    throw SchemaError(where + ": expected 'windows' or 'points'");
  }
  return d;
}

SetValuedMap map_from_json(const Json& j, std::size_t xdim, std::size_t image_dim,
                           bool allow_n, const std::string& where) {
  const Json& ps = need(j, "pieces", where);
  if (!ps.is_array() || ps.empty())
    throw SchemaError(where + ".pieces must be a nonempty array");
  std::vector<SetValuedMap::Piece> pieces;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const Json& pj = ps[k];
    const std::string pw = where + ".pieces[" + std::to_string(k) + "]";
    SetValuedMap::Piece p;
    if (pj.contains("guard")) {
      if (!pj.at("guard").is_string())
        throw SchemaError(pw + ".guard must be a string");
      p.guard = Guard::parse(pj.at("guard").get<std::string>());
      check_vars(p.guard.max_x_index(), p.guard.uses_n(), xdim, allow_n, pw);
    }
    if (pj.contains("box")) {
      const Json& b = pj.at("box");
      const Json& lo = need(b, "lo", pw + ".box");
      const Json& hi = need(b, "hi", pw + ".box");
      if (!lo.is_array() || !hi.is_array() || lo.size() != image_dim ||
          hi.size() != image_dim)
        throw SchemaError(pw + ".box: lo and hi need " +
                          std::to_string(image_dim) + " entries");
      auto flags = [&](const char* key) {
        std::vector<bool> f(image_dim, false);
        if (b.contains(key)) {
          const Json& a = b.at(key);
          if (!a.is_array() || a.size() != image_dim)
            throw SchemaError(pw + ".box." + key + " needs " +
                              std::to_string(image_dim) + " booleans");
          for (std::size_t i = 0; i < image_dim; ++i) {
            if (!a[i].is_boolean())
              throw SchemaError(pw + ".box." + key + " entries must be booleans");
            f[i] = a[i].get<bool>();
          }
        }
        return f;
      };
      const auto lo_open = flags("lo_open");
      const auto hi_open = flags("hi_open");
      std::vector<SetValuedMap::AxisSpec> axes;
      for (std::size_t i = 0; i < image_dim; ++i) {
        SetValuedMap::AxisSpec a{expr_from_json(lo[i], pw), expr_from_json(hi[i], pw),
                                 lo_open[i], hi_open[i]};
        check_vars(a.lo.max_x_index(), a.lo.uses_n(), xdim, allow_n, pw);
        check_vars(a.hi.max_x_index(), a.hi.uses_n(), xdim, allow_n, pw);
        axes.push_back(std::move(a));
      }
      p.box = std::move(axes);
    }
    if (pj.contains("points")) {
      const Json& pts = pj.at("points");
      if (!pts.is_array() || pts.empty())
        throw SchemaError(pw + ".points must be a nonempty array");
      std::vector<std::vector<Expr>> rows;
      for (const auto& row : pts) {
        if (!row.is_array() || row.size() != image_dim)
          throw SchemaError(pw + ".points rows need " +
                            std::to_string(image_dim) + " entries");
        std::vector<Expr> r;
        for (const auto& e : row) {
          r.push_back(expr_from_json(e, pw));
          check_vars(r.back().max_x_index(), r.back().uses_n(), xdim, allow_n, pw);
        }
        rows.push_back(std::move(r));
      }
      p.points = std::move(rows);
    }
    pieces.push_back(std::move(p));
  }
  return SetValuedMap::from_pieces(xdim, image_dim, std::move(pieces));
}

}  // namespace

Cone cone_from_json(const Json& j) {
  const std::string kind = need(j, "kind", "cone").is_string()
                               ? j.at("kind").get<std::string>()
                               : "";
  if (kind == "orthant") {
    const Json& d = need(j, "dim", "cone");
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw SchemaError("cone.dim must be a positive integer");
    return Cone::orthant(d.get<std::size_t>());
  }
  if (kind == "halfspaces") {
    std::vector<Vec> rows;
    try {
      rows = need(j, "rows", "cone").get<std::vector<Vec>>();
    } catch (const Json::exception&) {
      throw SchemaError("cone.rows must be an array of number arrays");
    }
    try {
      return Cone::from_halfspaces(std::move(rows));
    } catch (const InvalidSet& e) {
      throw SchemaError(std::string("cone: ") + e.what());
    } catch (const DimensionMismatch& e) {
      throw SchemaError(std::string("cone: ") + e.what());
    }
  }
  throw SchemaError("cone.kind must be 'orthant' or 'halfspaces'");
}

SetRep setrep_from_json(const Json& j) {
  try {
    if (j.contains("points")) {
      return PointCloud(j.at("points").get<std::vector<Vec>>());
    }
    if (j.contains("boxes")) {
      std::vector<Box> boxes;
      for (const auto& b : j.at("boxes")) {
        const Json& lo = need(b, "lo", "box");
        const Json& hi = need(b, "hi", "box");
        if (!lo.is_array() || !hi.is_array() || lo.size() != hi.size())
          throw SchemaError("box lo and hi must be arrays of equal length");
        Box box;
        for (std::size_t i = 0; i < lo.size(); ++i) {
          Interval iv;
          if (!lo[i].is_number()) throw SchemaError("box lo entries must be numbers");
          iv.lo = lo[i].get<double>();
          if (hi[i].is_string()) {
            if (hi[i].get<std::string>() != "inf")
              throw SchemaError("box hi strings must be \"inf\"");
            iv.hi = kInf;
          } else if (hi[i].is_number()) {
            iv.hi = hi[i].get<double>();
          } else {
            throw SchemaError("box hi entries must be numbers or \"inf\"");
          }
          auto flag_at = [&](const char* key) {
            if (!b.contains(key)) return false;
            const Json& a = b.at(key);
            if (!a.is_array() || a.size() != lo.size() || !a[i].is_boolean())
              throw SchemaError(std::string("box ") + key +
                                " must be a boolean array matching lo");
            return a[i].get<bool>();
          };
          iv.lo_open = flag_at("lo_open");
          iv.hi_open = flag_at("hi_open");
          iv.hi = normalize_hi(iv.hi, iv.hi_open);
          box.axes.push_back(iv);
        }
        boxes.push_back(std::move(box));
      }
      return BoxUnion(std::move(boxes));
    }
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("set literal: ") + e.what());
  } catch (const InvalidSet& e) {
    throw SchemaError(std::string("set literal: ") + e.what());
  } catch (const DimensionMismatch& e) {
    throw SchemaError(std::string("set literal: ") + e.what());
  }
  throw SchemaError("set literal needs 'points' or 'boxes'");
}

LoadedFile load_problem_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("problem file must be a JSON object");
  const std::string label =
      j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>()
                                                        : "problem";
  Cone cone = cone_from_json(need(j, "cone", "problem"));
  const DomainSpec dspec = domain_spec(need(j, "domain", "problem"), false, "domain");
  const std::size_t xdim = dspec.dim();
  const Json& mj = need(j, "map", "problem");
  std::size_t image_dim = cone.dim();
  if (mj.contains("image_dim")) {
    if (!mj.at("image_dim").is_number_integer())
      throw SchemaError("map.image_dim must be an integer");
    image_dim = mj.at("image_dim").get<std::size_t>();
  }
  if (image_dim != cone.dim())
    throw SchemaError("map.image_dim differs from the cone dimension");
  SetValuedMap map = map_from_json(mj, xdim, image_dim, false, "map");
  Problem base(label, cone, dspec.at(std::nullopt), map);

  LoadedFile out{std::move(base), std::nullopt, j};
  if (!j.contains("family")) return out;

  const Json& fj = j.at("family");
  if (fj.contains("subst") && fj.at("subst") != "n")
    throw SchemaError("family.subst must be \"n\"");
  const Json& nm = need(fj, "n_max", "family");
  if (!nm.is_number_integer() || nm.get<long long>() < 8)
    throw SchemaError("family.n_max must be an integer >= 8");
  const int n_max = nm.get<int>();
  DomainSpec dn = fj.contains("domain_n")
                      ? domain_spec(fj.at("domain_n"), true, "family.domain_n")
                      : dspec;
  if (dn.dim() != xdim) throw SchemaError("family.domain_n has the wrong dimension");
  SetValuedMap map_n =
      map_from_json(need(fj, "map_n", "family"), xdim, image_dim, true, "family.map_n");

  std::optional<PerturbedFamily::RecoveryFn> recovery;
  if (fj.contains("recovery_hint")) {
    const Json& rh = fj.at("recovery_hint");
    if (!rh.is_array() || rh.size() != xdim)
      throw SchemaError("family.recovery_hint needs one expression per coordinate");
    std::vector<Expr> parts;
    for (const auto& e : rh) {
      parts.push_back(expr_from_json(e, "family.recovery_hint"));
      check_vars(parts.back().max_x_index(), parts.back().uses_n(), xdim, true,
                 "family.recovery_hint");
    }
    recovery = [parts](VecView xbar, long long n) {
      Vec out;
      const Env env{xbar, n};
      for (const auto& e : parts) out.push_back(e.eval(env));
      return out;
    };
  }
  auto dn_shared = std::make_shared<DomainSpec>(std::move(dn));
  out.family.emplace(out.base, std::move(map_n),
                     [dn_shared](long long n) { return dn_shared->at(n); }, n_max,
                     std::move(recovery), fj);
  return out;
}

LoadedFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open problem file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw SchemaError("malformed JSON in '" + path + "': " + e.what());
  }
  return load_problem_json(j);
}

}  // namespace setorder
