#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "setorder/cone.hpp"
#include "setorder/problem.hpp"
#include "setorder/verdict.hpp"

namespace setorder {

enum class GenKind { Constant, RadialShrink, RandomBall, BoundaryHugging, Adversarial };

const char* to_string(GenKind k);

/// Seeded family of sequences x_n -> xbar with x_n in D_n.
///
/// Radii: radial-shrink and random-in-ball use R / 2^n. Boundary-hugging
/// starts on a face of D_n and slides to xbar as 2^(-n/4); adversarial-worst
/// searches the grid ball of radius R 2^(-n/4). R is the width of the base
/// domain unless `radius` is positive. Every point is projected into D_n.
struct Battery {
  std::uint64_t seed = 20240611;
  int random_count = 2;
  double radius = 0.0;
  std::vector<GenKind> kinds{GenKind::Constant, GenKind::RadialShrink,
                             GenKind::RandomBall, GenKind::BoundaryHugging,
                             GenKind::Adversarial};

  Json to_json() const;
};

struct Sequence {
  GenKind kind = GenKind::Constant;
  int variant = 0;
  std::vector<Vec> points;  ///< points[n] for n = 0..horizon

  std::string name() const;
  /// Replay data: seed, generator, variant and n range.
  Json certificate(std::uint64_t seed) const;
};

using DomainAt = std::function<const Domain&(long long)>;
/// Score to maximize for the adversarial generator, e.g. a ray deficit,
/// evaluated at grid point `index` of D_n.
using ScoreFn = std::function<double(long long n, std::size_t index)>;

std::vector<Sequence> generate(const Battery& battery, VecView xbar,
                               const DomainAt& domain_at, int horizon, double width,
                               const ScoreFn* score = nullptr);

/// Euclidean distance.
double distance(VecView a, VecView b);

}  // namespace setorder
