#include "setorder/battery.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

namespace setorder {
namespace {

// Grid-bound generators shrink by 2^(-n/4): they explore the grid early and
// are within R/256 of xbar by n = 32, so a fixed grid cannot pin them.
double grid_shrink(int n) { return std::exp2(-n / 4.0); }

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 step over the running hash
  h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  h += 0x9E3779B97F4A7C15ULL;
  h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ULL;
  h = (h ^ (h >> 27)) * 0x94D049BB133111EBULL;
  return h ^ (h >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, GenKind kind, int variant,
                          VecView xbar) {
  std::uint64_t h = mix(seed, static_cast<std::uint64_t>(kind));
  h = mix(h, static_cast<std::uint64_t>(variant));
  for (double v : xbar) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    h = mix(h, bits);
  }
  return h;
}

Vec unit_direction(std::mt19937_64& rng, std::size_t k) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec d(k);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& v : d) {
      v = normal(rng);
      norm += v * v;
    }
  } while (norm < 1e-24);
  norm = std::sqrt(norm);
  for (double& v : d) v /= norm;
  return d;
}

}  // namespace

const char* to_string(GenKind k) {
  switch (k) {
    case GenKind::Constant:
      return "constant";
    case GenKind::RadialShrink:
      return "radial-shrink";
    case GenKind::RandomBall:
      return "random-in-ball";
    case GenKind::BoundaryHugging:
      return "boundary-hugging";
    case GenKind::Adversarial:
      return "adversarial-worst";
  }
  return "constant";
}

Json Battery::to_json() const {
  Json ks = Json::array();
  for (GenKind k : kinds) ks.push_back(to_string(k));
  return Json{{"seed", seed}, {"random_count", random_count}, {"radius", radius},
              {"generators", ks}};
}

std::string Sequence::name() const {
  return std::string(to_string(kind)) + "#" + std::to_string(variant);
}

Json Sequence::certificate(std::uint64_t seed) const {
  return Json{{"seed", seed},
              {"generator", to_string(kind)},
              {"variant", variant},
              {"n_range", {0, static_cast<int>(points.size()) - 1}}};
}

double distance(VecView a, VecView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<Sequence> generate(const Battery& battery, VecView xbar,
                               const DomainAt& domain_at, int horizon, double width,
                               const ScoreFn* score) {
  const std::size_t k = xbar.size();
  const double big_r = battery.radius > 0 ? battery.radius : width;
  std::vector<Sequence> out;

  auto emit = [&](GenKind kind, int variant, auto&& point_at) {
    Sequence s;
    s.kind = kind;
    s.variant = variant;
    for (int n = 0; n <= horizon; ++n)
      s.points.push_back(domain_at(n).project(point_at(n)));
    out.push_back(std::move(s));
  };

  for (GenKind kind : battery.kinds) {
    switch (kind) {
      case GenKind::Constant:
        emit(kind, 0, [&](int) { return Vec(xbar.begin(), xbar.end()); });
        break;
      case GenKind::RadialShrink:
        for (std::size_t i = 0; i < k; ++i) {
          for (int sign : {1, -1}) {
            const int variant = static_cast<int>(2 * i) + (sign < 0 ? 1 : 0);
            emit(kind, variant, [&](int n) {
              Vec x(xbar.begin(), xbar.end());
              x[i] += sign * std::ldexp(big_r, -n);
              return x;
            });
          }
        }
        break;
      case GenKind::RandomBall:
        for (int v = 0; v < battery.random_count; ++v) {
          std::mt19937_64 rng(stream_seed(battery.seed, kind, v, xbar));
          std::uniform_real_distribution<double> unif(0.0, 1.0);
          std::vector<Vec> offsets;
          for (int n = 0; n <= horizon; ++n) {
            Vec d = unit_direction(rng, k);
            const double r = std::ldexp(big_r, -n) *
                             std::pow(unif(rng), 1.0 / static_cast<double>(k));
            for (double& c : d) c *= r;
            offsets.push_back(std::move(d));
          }
          emit(kind, v, [&](int n) {
            Vec x(xbar.begin(), xbar.end());
            for (std::size_t i = 0; i < k; ++i) x[i] += offsets[n][i];
            return x;
          });
        }
        break;
      case GenKind::BoundaryHugging: {
        const Domain& d0 = domain_at(0);
        if (!d0.is_grid()) break;
        for (std::size_t i = 0; i < k; ++i) {
          for (int side : {0, 1}) {
            emit(kind, static_cast<int>(2 * i) + side, [&](int n) {
              const Window& w = domain_at(n).window_list()[i];
              const double face = side == 0 ? w.lo : w.hi;
              Vec x(xbar.begin(), xbar.end());
              x[i] += (face - x[i]) * grid_shrink(n);
              return x;
            });
          }
        }
        break;
      }
      case GenKind::Adversarial:
        if (score == nullptr) break;
        emit(kind, 0, [&](int n) {
          const Domain& dn = domain_at(n);
          const auto& grid = dn.grid();
          const double reach = big_r * grid_shrink(n);
          // start from the grid point nearest to xbar
          std::size_t best = 0;
          double best_dist = kInf;
          for (std::size_t g = 0; g < grid.size(); ++g) {
            const double d = distance(grid[g], xbar);
            if (d < best_dist) {
              best_dist = d;
              best = g;
            }
          }
          double best_score = (*score)(n, best);
          for (std::size_t g = 0; g < grid.size(); ++g) {
            if (g == best || distance(grid[g], xbar) > reach) continue;
            const double s = (*score)(n, g);
            if (s > best_score) {
              best_score = s;
              best = g;
            }
          }
          return grid[best];
        });
        break;
    }
  }
  return out;
}

}  // namespace setorder
