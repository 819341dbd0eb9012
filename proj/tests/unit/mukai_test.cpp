#include "hkcone/mukai.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hkcone;
using namespace hkcone::mukai;

namespace {

RatVector v(std::initializer_list<long> c) {
  RatVector out;
  for (long x : c) out.emplace_back(x);
  return out;
}

RatMatrix m(std::vector<std::vector<long>> rows) {
  std::vector<RatVector> r;
  for (auto& row : rows) r.emplace_back(row.begin(), row.end());
  return RatMatrix::from_rows(r);
}

struct Sample {
  RatVector u, phi;
};

Sample random_sample(oracle::Rng& rng, std::size_t k) {
  while (true) {
    RatVector u(k + 1), phi(k + 1);
    for (auto& x : u) x = rng.rational();
    for (auto& x : phi) x = rng.rational();
    Rational uu = dot(u, u);
    if (uu == 0) continue;
    Rational c = dot(phi, u) / uu;
    for (std::size_t i = 0; i <= k; ++i) phi[i] -= c * u[i];
    bool zero = std::all_of(phi.begin(), phi.end(), [](const Rational& x) { return x == 0; });
    if (!zero) return {u, phi};
  }
}

}  // namespace

TEST(Mukai, MakePointExamples) {
  auto p = make_point(v({1, 0}), v({0, 1}));
  EXPECT_EQ(p.endomorphism(), m({{0, 1}, {0, 0}}));
  EXPECT_EQ(p.k(), 1u);
  auto z = make_point(v({1, 0}), v({0, 0}));
  EXPECT_TRUE(z.on_zero_section());
  EXPECT_THROW(make_point(v({1, 0}), v({1, 0})), precondition_error);
  EXPECT_THROW(make_point(v({0, 0}), v({0, 1})), precondition_error);
  EXPECT_THROW(make_point(v({1, 0}), v({0, 1, 0})), precondition_error);
}

TEST(Mukai, ConstructorValidatesMembership) {
  EXPECT_NO_THROW(MukaiPoint(v({1, 0}), m({{0, 3}, {0, 0}})));
  EXPECT_THROW(MukaiPoint(v({0, 1}), m({{0, 3}, {0, 0}})), precondition_error);  // image not in C u
  EXPECT_THROW(MukaiPoint(v({1, 0}), m({{1, 0}, {0, 0}})), precondition_error);  // A^2 != 0
  EXPECT_THROW(MukaiPoint(v({1, 0}), m({{0, 1, 0}})), precondition_error);
  EXPECT_THROW(DualMukaiPoint(v({0, 1}), m({{0, 0}, {1, 1}})), precondition_error);
}

TEST(Mukai, ContractExamples) {
  EXPECT_TRUE(contract(make_point(v({1, 0}), v({0, 0}))).is_zero());
  auto a = contract(make_point(v({1, 0}), v({0, 1})));
  EXPECT_EQ(a, m({{0, 1}, {0, 0}}));
  EXPECT_EQ(rank(a), 1u);
  EXPECT_TRUE((a * a).is_zero());
}

TEST(Mukai, FlopExamples) {
  auto d = flop(make_point(v({1, 0}), v({0, 1})));
  EXPECT_TRUE(projectively_equal(d.phi(), v({0, 1})));
  EXPECT_EQ(d.endomorphism(), m({{0, 0}, {1, 0}}));
  EXPECT_THROW(flop(make_point(v({1, 0}), v({0, 0}))), precondition_error);

  auto d2 = flop(make_point(v({1, 0, 0}), v({0, 2, 3})));
  EXPECT_TRUE(projectively_equal(d2.phi(), v({0, 2, 3})));
}

TEST(Mukai, DiagramOnTheWorkedPoint) {
  auto p = make_point(v({1, 0}), v({0, 1}));
  EXPECT_TRUE(check_diagram(p));
  EXPECT_EQ(contract(flop(p)), adjoint(contract(p)));
  RatVector scaled{Rational(7, 3), Rational(0)};
  EXPECT_TRUE(check_diagram(make_point(scaled, v({0, 1}))));
  EXPECT_THROW(check_diagram(make_point(v({1, 0}), v({0, 0}))), precondition_error);
}

TEST(Mukai, ProjectiveEquality) {
  EXPECT_TRUE(projectively_equal(v({1, 2, 3}), v({-2, -4, -6})));
  EXPECT_FALSE(projectively_equal(v({1, 2, 3}), v({1, 2, 4})));
  EXPECT_FALSE(projectively_equal(v({1, 2}), v({0, 0})));
}

TEST(Mukai, RandomPointsSatisfyTheModel) {
  oracle::Rng rng(31);
  for (std::size_t k = 1; k <= 4; ++k) {
    for (int i = 0; i < 250; ++i) {
      auto s = random_sample(rng, k);
      RatVector polydisc{rng.rational(), rng.rational()};
      auto p = make_point(s.u, s.phi, polydisc);
      const RatMatrix& a = p.endomorphism();
      EXPECT_TRUE((a * a).is_zero());
      EXPECT_LE(rank(a), 1u);
      EXPECT_TRUE(in_nilpotent_cone(contract(p)));
      EXPECT_TRUE(check_diagram(p));

      auto d = flop(p);
      // phi annihilates ker A and B = A* squares to zero.
      for (const auto& kv : nullspace(a)) EXPECT_EQ(dot(d.phi(), kv), 0);
      EXPECT_TRUE((d.endomorphism() * d.endomorphism()).is_zero());
      EXPECT_EQ(d.polydisc(), polydisc);

      auto back = flop(d);
      EXPECT_TRUE(projectively_equal(back.u(), p.u()));
      EXPECT_EQ(back.endomorphism(), a);
      EXPECT_EQ(back.polydisc(), polydisc);

      // Rescaling u does not move the point.
      Rational c = rng.rational();
      if (c == 0) continue;
      RatVector cu = s.u;
      for (auto& x : cu) x *= c;
      RatVector phi_c = s.phi;
      for (auto& x : phi_c) x /= c;
      auto q = make_point(cu, phi_c);
      EXPECT_EQ(q.endomorphism(), a);
      EXPECT_TRUE(projectively_equal(flop(q).phi(), d.phi()));
    }
  }
}
