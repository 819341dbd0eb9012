#include "hkcone/torus.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace hkcone;
using namespace hkcone::torus;

namespace {

TorusPoint q(long xn, long xd, long yn, long yd) { return TorusPoint::exact(Rational(xn, xd), Rational(yn, yd)); }

MarkedFiber fixture_fiber() { return MarkedFiber(q(0, 1, 0, 1), q(1, 3, 0, 1), q(0, 1, 1, 2)); }

// Covering radius of the depth-100 orbit with t1 = (sqrt 2, 0), t2 = (0, sqrt 3),
// computed once by an independent numpy script and frozen here.
constexpr double kOracleRadius = 0.006914536239788577;
constexpr double kFrozenTolerance = 0.05;

MarkedFiber irrational_fiber() {
  double s2 = std::fmod(std::sqrt(2.0), 1.0);
  double s3 = std::fmod(std::sqrt(3.0), 1.0);
  // t1 = e1 - e0 and t2 = e2 - e1.
  return MarkedFiber(TorusPoint::real(0, 0), TorusPoint::real(s2, 0, true), TorusPoint::real(s2, s3, true));
}

bool contains(const std::vector<TorusPoint>& pts, const TorusPoint& p) {
  return std::any_of(pts.begin(), pts.end(), [&](const TorusPoint& x) { return x.same_as(p); });
}

}  // namespace

TEST(Torus, PointsReduceModOne) {
  auto p = TorusPoint::exact(Rational(4, 3), Rational(-1, 2));
  EXPECT_EQ(p.exact_x(), Rational(1, 3));
  EXPECT_EQ(p.exact_y(), Rational(1, 2));
  auto r = TorusPoint::real(1.25, -0.25);
  EXPECT_DOUBLE_EQ(r.real_x(), 0.25);
  EXPECT_DOUBLE_EQ(r.real_y(), 0.75);
  EXPECT_THROW(TorusPoint::real(NAN, 0), precondition_error);
  EXPECT_THROW(r.exact_x(), precondition_error);
  EXPECT_THROW(p + r, precondition_error);
}

TEST(Torus, SigmaImageExamples) {
  auto img = sigma_image(fixture_fiber(), q(0, 1, 0, 1));
  ASSERT_EQ(img.size(), 3u);
  EXPECT_TRUE(contains(img, q(1, 3, 0, 1)));
  EXPECT_TRUE(contains(img, q(1, 3, 1, 2)));
  EXPECT_TRUE(contains(img, q(0, 1, 1, 2)));

  MarkedFiber degenerate(q(0, 1, 0, 1), q(0, 1, 0, 1), q(0, 1, 0, 1));
  auto single = sigma_image(degenerate, q(1, 5, 2, 7));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_TRUE(single[0].same_as(q(1, 5, 2, 7)));

  EXPECT_THROW(sigma_image(fixture_fiber(), TorusPoint::real(0, 0)), precondition_error);
}

TEST(Torus, SigmaImageIsEquivariant) {
  oracle::Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    auto pt = [&] { return TorusPoint::exact(rng.rational(20, 12), rng.rational(20, 12)); };
    MarkedFiber f(pt(), pt(), pt());
    TorusPoint x = pt(), c = pt();
    auto a = sigma_image(f, x + c);
    auto b = sigma_image(f, x);
    ASSERT_EQ(a.size(), b.size());
    for (const auto& p : b) EXPECT_TRUE(contains(a, p + c));
  }
}

TEST(Torus, RelatedExamples) {
  auto f = fixture_fiber();
  auto g = generators(f);
  TorusPoint x = q(1, 7, 2, 5);
  EXPECT_TRUE(related(f, x, x + g.t1));
  EXPECT_TRUE(related(f, x, x + g.t2));
  EXPECT_TRUE(related(f, x, x + g.t3));
  // The shared point for t1 is x + e1 + e2.
  TorusPoint shared = x + f.e1() + f.e2();
  EXPECT_TRUE(contains(sigma_image(f, x), shared));
  EXPECT_TRUE(contains(sigma_image(f, x + g.t1), shared));

  MarkedFiber zero(q(0, 1, 0, 1), q(0, 1, 0, 1), q(0, 1, 0, 1));
  EXPECT_FALSE(related(zero, x, x + q(1, 2, 1, 2)));
  EXPECT_THROW(related(irrational_fiber(), TorusPoint::real(0, 0), TorusPoint::real(0, 0)), precondition_error);
}

TEST(Torus, RelatedForEachGeneratorOnRandomFibers) {
  oracle::Rng rng(52);
  for (int i = 0; i < 300; ++i) {
    auto pt = [&] { return TorusPoint::exact(rng.rational(30, 16), rng.rational(30, 16)); };
    MarkedFiber f(pt(), pt(), pt());
    TorusPoint x = pt();
    auto g = generators(f);
    EXPECT_TRUE(related(f, x, x + g.t1));
    EXPECT_TRUE(related(f, x, x + g.t2));
    EXPECT_TRUE(related(f, x, x + g.t3));
    EXPECT_TRUE((g.t1 + g.t2 + g.t3).same_as(q(0, 1, 0, 1)));
  }
}

TEST(Torus, GeneratorsExamples) {
  auto g = generators(fixture_fiber());
  EXPECT_TRUE(g.t1.same_as(q(1, 3, 0, 1)));
  EXPECT_TRUE(g.t2.same_as(q(2, 3, 1, 2)));
  EXPECT_TRUE(g.t3.same_as(q(0, 1, 1, 2)));
  auto z = generators(MarkedFiber(q(1, 4, 0, 1), q(1, 4, 0, 1), q(1, 4, 0, 1)));
  EXPECT_TRUE(z.t1.same_as(q(0, 1, 0, 1)));
  EXPECT_TRUE(z.t2.same_as(q(0, 1, 0, 1)));
  EXPECT_TRUE(z.t3.same_as(q(0, 1, 0, 1)));
}

TEST(Torus, ExactOrbitOfTheFixtureFiber) {
  auto o = orbit(fixture_fiber(), q(0, 1, 0, 1), 1);
  EXPECT_TRUE(o.finite);
  EXPECT_EQ(o.size(), 6u);
  auto g = generators(fixture_fiber());
  mpz_class expected = oracle::subgroup_order({{g.t1.exact_x(), g.t1.exact_y()}, {g.t2.exact_x(), g.t2.exact_y()}});
  EXPECT_EQ(mpz_class(o.size()), expected);
  EXPECT_EQ(orbit(fixture_fiber(), q(0, 1, 0, 1), 50).size(), 6u);

  MarkedFiber trivial(q(1, 5, 0, 1), q(1, 5, 0, 1), q(1, 5, 0, 1));
  auto t = orbit(trivial, q(2, 9, 1, 9), 4);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_TRUE(t.points[0].same_as(q(2, 9, 1, 9)));
}

TEST(Torus, ExactOrbitMatchesSubgroupOracle) {
  oracle::Rng rng(53);
  for (int i = 0; i < 200; ++i) {
    auto pt = [&] { return TorusPoint::exact(rng.rational(6, 6), rng.rational(6, 6)); };
    MarkedFiber f(pt(), pt(), pt());
    TorusPoint x = pt(), c = pt();
    auto o = orbit(f, x, 1);
    auto g = generators(f);
    mpz_class expected = oracle::subgroup_order({{g.t1.exact_x(), g.t1.exact_y()}, {g.t2.exact_x(), g.t2.exact_y()}});
    EXPECT_EQ(mpz_class(o.size()), expected);
    EXPECT_TRUE(std::is_sorted(o.points.begin(), o.points.end()));

    auto shifted = orbit(f, x + c, 1);
    ASSERT_EQ(shifted.size(), o.size());
    for (const auto& p : o.points) EXPECT_TRUE(contains(shifted.points, p + c));
  }
}

TEST(Torus, ExactOrbitRespectsThePointCap) {
  MarkedFiber f(q(0, 1, 0, 1), q(1, 101, 0, 1), q(1, 101, 1, 103));
  EXPECT_THROW(orbit(f, q(0, 1, 0, 1), 1, OrbitOptions{1000}), precondition_error);
}

TEST(Torus, TorsionExamples) {
  EXPECT_EQ(is_torsion(q(1, 3, 0, 1)).order, 3);
  EXPECT_EQ(is_torsion(q(0, 1, 0, 1)).order, 1);
  auto t = is_torsion(q(1, 4, 1, 6));
  EXPECT_TRUE(t.torsion);
  EXPECT_EQ(t.order, 12);
  EXPECT_FALSE(is_torsion(TorusPoint::real(std::sqrt(2.0), 0, true)).torsion);
  EXPECT_THROW(is_torsion(TorusPoint::real(0.5, 0)), precondition_error);
}

TEST(Torus, TorsionOrderAnnihilates) {
  oracle::Rng rng(54);
  for (int i = 0; i < 300; ++i) {
    TorusPoint p = TorusPoint::exact(rng.rational(40, 30), rng.rational(40, 30));
    auto t = is_torsion(p);
    long n = t.order.get_si();
    EXPECT_TRUE(p.times(n).same_as(q(0, 1, 0, 1)));
    for (long d = 1; d < n; ++d)
      if (n % d == 0) EXPECT_FALSE(p.times(d).same_as(q(0, 1, 0, 1)));
  }
}

TEST(Torus, CoveringRadiusExamples) {
  EXPECT_DOUBLE_EQ(covering_radius({TorusPoint::real(0, 0)}, 10), 0.5);
  std::vector<TorusPoint> grid;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) grid.push_back(TorusPoint::real(i / 10.0, j / 10.0));
  EXPECT_LE(covering_radius(grid, 10), 1.0 / 20.0);
  EXPECT_THROW(covering_radius({}, 10), precondition_error);
  EXPECT_THROW(covering_radius(grid, 0), precondition_error);
}

TEST(Torus, IrrationalOrbitIsDense) {
  auto f = irrational_fiber();
  auto o = orbit(f, TorusPoint::real(0, 0), 100);
  EXPECT_FALSE(o.finite);
  EXPECT_EQ(o.size(), 20201u);
  double r = covering_radius(o.points, 100);
  EXPECT_LT(r, kFrozenTolerance);
  EXPECT_NEAR(r, kOracleRadius, 1e-9);
}

TEST(Torus, RealOrbitGrowsWithDepth) {
  auto f = irrational_fiber();
  auto small = orbit(f, TorusPoint::real(0, 0), 10);
  auto large = orbit(f, TorusPoint::real(0, 0), 20);
  EXPECT_EQ(small.size(), 221u);
  EXPECT_GT(large.size(), small.size());
  EXPECT_FALSE(small.finite);

  // A torsion fiber in real mode closes up and reports finiteness.
  MarkedFiber torsion(TorusPoint::real(0, 0), TorusPoint::real(0.5, 0), TorusPoint::real(0.5, 0.5));
  auto closed = orbit(torsion, TorusPoint::real(0, 0), 6);
  EXPECT_TRUE(closed.finite);
  EXPECT_EQ(closed.size(), 4u);
}

TEST(Torus, RealOrbitIsTranslationEquivariant) {
  auto f = irrational_fiber();
  TorusPoint c = TorusPoint::real(0.3, 0.7);
  auto a = orbit(f, TorusPoint::real(0, 0), 8);
  auto b = orbit(f, c, 8);
  ASSERT_EQ(a.size(), b.size());
  for (const auto& p : a.points) EXPECT_TRUE(contains(b.points, p + c));
}
