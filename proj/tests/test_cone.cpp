#include <gtest/gtest.h>

#include <random>

#include "setorder/cone.hpp"
#include "setorder/error.hpp"
#include "support.hpp"

using namespace setorder;

TEST(Cone, OrthantMembership) {
  const Cone c = Cone::orthant(2);
  EXPECT_TRUE(c.contains(Vec{0, 0}, 0.0));
  EXPECT_TRUE(c.contains(Vec{1, -1e-12}, 1e-9));
  EXPECT_FALSE(c.contains(Vec{1, -1e-3}));
  EXPECT_TRUE(c.contains_interior(Vec{1, 1}));
  EXPECT_FALSE(c.contains_interior(Vec{1, 0}));
  EXPECT_TRUE(Cone::orthant(1).contains_interior(Vec{0.5}, 0.0));
}

TEST(Cone, WedgeMembershipByHand) {
  // z2 >= |z1|: rows (-1, 1) and (1, 1); at (2, 1) the first product is -1.
  const Cone c = Cone::from_halfspaces({{-1, 1}, {1, 1}});
  EXPECT_FALSE(c.contains(Vec{2, 1}));
  EXPECT_TRUE(c.contains(Vec{1, 1}));
  EXPECT_TRUE(c.contains_interior(Vec{0, 1}));
}

TEST(Cone, RowsAreUnitNormalized) {
  const Cone c = Cone::from_halfspaces({{3, 0}, {0, 0.5}});
  for (const auto& g : c.rows()) EXPECT_NEAR(g[0] * g[0] + g[1] * g[1], 1.0, 1e-12);
  EXPECT_EQ(c.kind(), ConeKind::Orthant);
}

TEST(Cone, Dominates) {
  const Cone c = Cone::orthant(2);
  EXPECT_TRUE(c.dominates(Vec{0, 0}, Vec{1, 2}, true));
  EXPECT_TRUE(c.dominates(Vec{1, 1}, Vec{1, 1}, false));
  EXPECT_FALSE(c.dominates(Vec{1, 1}, Vec{1, 1}, true));
  EXPECT_FALSE(c.dominates(Vec{0, 1}, Vec{1, 0}, false));
  EXPECT_FALSE(c.dominates(Vec{1, 0}, Vec{0, 1}, false));
}

TEST(Cone, InteriorDirectionHasUnitMargin) {
  EXPECT_EQ(Cone::orthant(3).interior_direction(), (Vec{1, 1, 1}));
  const Cone c = Cone::from_halfspaces({{1, 0}, {1, 1}});
  const Vec& u = c.interior_direction();
  // margins measured against the raw rows
  EXPECT_GT(u[0], 0.0);
  EXPECT_GT(u[0] + u[1], 0.0);
  EXPECT_NEAR(c.margin(u), 1.0, 1e-9);
}

TEST(Cone, NotSolidIsRejected) {
  EXPECT_THROW(Cone::from_halfspaces({{1, 0}, {-1, 0}}), NotSolid);
  EXPECT_THROW(Cone::from_halfspaces({{0, 0}}), InvalidSet);
}

TEST(Cone, ScaleWitnessSmallestN) {
  const Cone c = Cone::orthant(1);
  EXPECT_EQ(scale_witness(c, Vec{1}, Vec{2}), 1);
  EXPECT_EQ(scale_witness(c, Vec{5}, Vec{2}), 5);
  EXPECT_EQ(scale_witness(c, Vec{0}, Vec{7}), 1);
}

TEST(Cone, ScaleWitnessProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 3.0);
  for (int it = 0; it < 200; ++it) {
    const Cone c = oracle::random_cone(rng, 3);
    Vec cvec;
    do {
      cvec = {unif(rng), unif(rng), unif(rng)};
    } while (!c.contains(cvec));
    Vec u = c.interior_direction();
    const double k = 0.5 + unif(rng);
    for (double& x : u) x *= k;
    const long long n = scale_witness(c, cvec, u);
    Vec w(3);
    for (int i = 0; i < 3; ++i) w[i] = u[i] / 2 - cvec[i] / static_cast<double>(n);
    EXPECT_TRUE(c.contains(w));
    if (n > 1) {
      for (int i = 0; i < 3; ++i) w[i] = u[i] / 2 - cvec[i] / static_cast<double>(n - 1);
      EXPECT_FALSE(c.contains(w));
    }
  }
}

TEST(Cone, FinenessWitnessOrthant) {
  const Cone c = Cone::orthant(2);
  const FinenessWitness w = fineness_witness(c, c, Vec{1, 1});
  EXPECT_TRUE(c.contains_interior(w.u));
  Vec gap{1 - w.u[0], 1 - w.u[1]};
  EXPECT_TRUE(c.contains_interior(gap));
  EXPECT_THROW(fineness_witness(c, c, Vec{1, 0}), PreconditionError);
}

TEST(Cone, FinenessWitnessNestedCones) {
  // the wedge z2 >= |z1| sits inside the upper half plane
  const Cone inner = Cone::from_halfspaces({{-1, 1}, {1, 1}});
  ASSERT_TRUE(cone_subset(inner, Cone::from_halfspaces({{0, 1}})));
  const FinenessWitness w =
      fineness_witness(inner, Cone::from_halfspaces({{0, 1}}), Vec{0, 1});
  EXPECT_TRUE(inner.contains_interior(w.u));
  EXPECT_GT(1 - w.u[1], 0.0);
  EXPECT_THROW(fineness_witness(Cone::orthant(2), inner, Vec{0, 1}),
               ContainmentNotEstablished);
}

TEST(Cone, ConvexityAndInteriorAbsorption) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  int checked = 0;
  while (checked < 500) {
    const Cone c = oracle::random_cone(rng, 2);
    Vec a{unif(rng), unif(rng)};
    Vec b{unif(rng), unif(rng)};
    if (!c.contains(a) || !c.contains_interior(b)) continue;
    ++checked;
    Vec s{a[0] + b[0], a[1] + b[1]};
    EXPECT_TRUE(c.contains(s));
    EXPECT_TRUE(c.contains_interior(s));
  }
}
