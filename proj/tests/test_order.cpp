#include <gtest/gtest.h>

#include <random>

#include "setorder/error.hpp"
#include "setorder/order.hpp"
#include "setorder/setrep.hpp"
#include "support.hpp"

using namespace setorder;

namespace {

SetRep box2(double l0, double h0, double l1, double h1, bool lo0, bool ho0, bool lo1,
            bool ho1) {
  return SetRep::box({{l0, h0, lo0, ho0}, {l1, h1, lo1, ho1}});
}

// (0,1) x (0,1] and [-1,5] x [2,3]: the x < 0 and x >= 2 values of the
// GEff example.
SetRep f_neg() { return box2(0, 1, 0, 1, true, true, true, false); }
SetRep f_big() { return box2(-1, 5, 2, 3, false, false, false, false); }

}  // namespace

TEST(UpperSet, PointsAndOpenBoxes) {
  const Cone c = Cone::orthant(2);
  const UpperSet p = upset(SetRep::point({0, 0}), c, false);
  EXPECT_TRUE(p.contains(Vec{1, 1}));
  EXPECT_FALSE(p.contains(Vec{-1, 0}));
  EXPECT_FALSE(upset(f_neg(), c, false).contains(Vec{0, 0.5}));
  EXPECT_TRUE(upset(f_neg(), c, true).contains(Vec{0, 0.5}));
  const UpperSet q = upset(SetRep::point({0}), Cone::orthant(1), false);
  EXPECT_TRUE(q.contains(Vec{0}));
  ASSERT_TRUE(q.has_upset() || q.closure_was_noop());
}

TEST(UpperSet, SetContainment) {
  const Cone c = Cone::orthant(2);
  EXPECT_TRUE(contains_set(upset(SetRep::point({0, 0}), c, false), SetRep::point({1, 1})));
  EXPECT_FALSE(contains_set(upset(f_neg(), c, false), f_big()));
}

TEST(SetRep, TranslateAndScale) {
  const OrderCtx ctx(Cone::orthant(2));
  const SetRep t = translate(SetRep::point({1, 2}), Vec{-1, -2});
  EXPECT_TRUE(equiv(t, SetRep::point({0, 0}), ctx));
  const OrderCtx ctx1(Cone::orthant(1));
  const SetRep b = translate(SetRep::box({{0, 1, true, false}}), Vec{1});
  EXPECT_TRUE(b.contains(Vec{2}));
  EXPECT_FALSE(b.contains(Vec{1}));
  EXPECT_TRUE(scale(SetRep::box({{1, 2, false, false}}), 2.0).contains(Vec{4}));
}

TEST(SetRep, CProperness) {
  const Cone c = Cone::orthant(2);
  const Verdict v = is_c_proper(SetRep::point({0, 0}), c);
  EXPECT_TRUE(v.is_holds());
  EXPECT_TRUE(is_c_proper(SetRep::box({{0, 1}, {0, 1}}), c).is_holds());
  std::mt19937_64 rng(3);
  std::vector<Vec> pts;
  std::uniform_real_distribution<double> unif(-5, 5);
  for (int i = 0; i < 100; ++i) pts.push_back({unif(rng), unif(rng)});
  const Verdict w = is_c_proper(PointCloud(pts), c);
  ASSERT_TRUE(w.is_holds());
  // the certificate lies outside A + C: below the componentwise minimum on
  // some axis
  const Vec z = w.evidence.at("point").get<Vec>();
  double m0 = 1e9, m1 = 1e9;
  for (const auto& p : pts) {
    m0 = std::min(m0, p[0]);
    m1 = std::min(m1, p[1]);
  }
  EXPECT_TRUE(z[0] < m0 || z[1] < m1);
}

TEST(SetRep, MalformedSetsAreRejected) {
  EXPECT_THROW(SetRep::box({{1, 0, false, false}}), InvalidSet);
  EXPECT_THROW(SetRep::box({{0, 0, true, false}}), InvalidSet);
  EXPECT_THROW(PointCloud({}), InvalidSet);
  EXPECT_THROW(PointCloud({{0, 1}, {0}}), DimensionMismatch);
}

TEST(Order, Examples) {
  const OrderCtx c2(Cone::orthant(2));
  const OrderCtx c1(Cone::orthant(1));
  const SetRep o = SetRep::point({0, 0});
  const SetRep one = SetRep::point({1, 1});
  EXPECT_TRUE(lower_le(o, one, c2));
  EXPECT_TRUE(lower_le(f_neg(), f_neg(), c2));
  EXPECT_FALSE(lower_le(f_big(), f_neg(), c2));
  EXPECT_FALSE(lower_le(f_neg(), SetRep::point({0, 0.5}), c2));
  EXPECT_TRUE(large_le(f_neg(), SetRep::point({0, 0.5}), c2));
  EXPECT_FALSE(large_le(SetRep::point({0}), SetRep::point({-1}), c1));
  EXPECT_TRUE(strict_lt(SetRep::point({0}), SetRep::point({1}), c1));
  EXPECT_FALSE(strict_lt(SetRep::point({0}), SetRep::point({0}), c1));
  EXPECT_TRUE(equiv(SetRep::box({{0, 1, true, false}}), SetRep::box({{0, 1, false, false}}), c1));
  EXPECT_FALSE(equiv(o, one, c2));
}

TEST(Order, NotProperWitnessAgrees) {
  const OrderCtx c2(Cone::orthant(2));
  EXPECT_TRUE(not_proper_witness(SetRep::point({0, 0}), c2).is_holds());
  EXPECT_TRUE(not_proper_witness(SetRep::box({{0, 1}, {0, 1}}), c2).is_holds());
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i)
    EXPECT_TRUE(not_proper_witness(oracle::random_points(rng, 2), c2).is_holds());
}

TEST(Order, RayDeficitBracketsTheRelations) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 500; ++it) {
    const std::size_t d = 1 + it % 3;
    const OrderCtx ctx(Cone::orthant(d));
    const SetRep a = it % 2 ? oracle::random_boxes(rng, d) : oracle::random_points(rng, d);
    const SetRep b = it % 3 ? oracle::random_boxes(rng, d) : oracle::random_points(rng, d);
    const double t = ray_deficit(a, b, ctx);
    ASSERT_TRUE(std::isfinite(t));
    const Vec& u = ctx.u();
    auto shifted = [&](double s) {
      Vec v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = -s * u[i];
      return translate(a, v);
    };
    EXPECT_TRUE(oracle::large_le(ctx.cone, shifted(t + 1e-7), b));
    EXPECT_FALSE(oracle::large_le(ctx.cone, shifted(t - 1e-3), b));
    EXPECT_EQ(large_le(a, b, ctx), t <= 1e-9);
  }
}

// Dense-sampling orthant oracle and a general-cone oracle on point clouds.
TEST(Order, MatchesSamplingOracle) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 3000; ++it) {
    const std::size_t d = 1 + it % 3;
    const bool general = it % 4 == 3;
    const Cone cone = general ? oracle::random_cone(rng, d) : Cone::orthant(d);
    const OrderCtx ctx(cone);
    auto draw = [&] {
      return general || rng() % 2 ? oracle::random_points(rng, d) : oracle::random_boxes(rng, d);
    };
    const SetRep a = draw();
    const SetRep b = draw();
    EXPECT_EQ(lower_le(a, b, ctx), oracle::lower_le(cone, a, b)) << "iteration " << it;
    EXPECT_EQ(large_le(a, b, ctx), oracle::large_le(cone, a, b)) << "iteration " << it;
    EXPECT_EQ(strict_lt(a, b, ctx), oracle::strict_lt(cone, a, b)) << "iteration " << it;
    EXPECT_EQ(strict_lt(a, b, ctx), strict_lt_by_search(a, b, ctx)) << "iteration " << it;
  }
}
