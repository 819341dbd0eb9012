#include "hkcone/disk.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <regex>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hkcone;
using namespace hkcone::disk;

namespace {

double norm2(const KleinPoint& p) { return p.u * p.u + p.v * p.v; }

bool near(const KleinPoint& a, const KleinPoint& b, double tol = 1e-9) {
  return std::abs(a.u - b.u) < tol && std::abs(a.v - b.v) < tol;
}

bool chord_has_endpoint(const WallChord& c, const KleinPoint& p) { return near(c.first, p) || near(c.second, p); }

double cross(const KleinPoint& o, const KleinPoint& a, const KleinPoint& b) {
  return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u);
}

// Proper intersection of segments pq and rs.
bool segments_cross(const KleinPoint& p, const KleinPoint& q, const KleinPoint& r, const KleinPoint& s) {
  double d1 = cross(r, s, p), d2 = cross(r, s, q), d3 = cross(p, q, r), d4 = cross(p, q, s);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

RationalVector base_point() { return RationalVector(LatticeClass{4, 4, -1}); }

SceneRequest fixture_request() { return {base_point(), Rational(16), std::nullopt}; }

}  // namespace

TEST(Disk, CuspsLieOnTheBoundary) {
  auto L = fixtures::quartic();
  auto diag = diagonalize(L);
  for (const auto& c : {LatticeClass{0, 1, 0}, LatticeClass{1, 1, -1}}) {
    EXPECT_EQ(square(L, c), 0);
    auto k = klein_coords(L, diag, RationalVector(c));
    EXPECT_NEAR(norm2(k), 1.0, 1e-9);
    auto neg = klein_coords(L, diag, RationalVector(-c));
    EXPECT_TRUE(near(k, neg));
  }
}

TEST(Disk, PositivePointsAreInside) {
  auto L = fixtures::quartic();
  auto diag = diagonalize(L);
  auto centre = klein_coords(L, diag, RationalVector(diag.transform.column(0)));
  EXPECT_NEAR(centre.u, 0.0, 1e-15);
  EXPECT_NEAR(centre.v, 0.0, 1e-15);
  for (int i = 1; i <= 4; ++i) EXPECT_LT(norm2(klein_coords(L, diag, fixtures::chamber(i))), 1.0);
  EXPECT_THROW(klein_coords(L, diag, RationalVector(LatticeClass{0, 0, 1})), precondition_error);
}

TEST(Disk, DeltaChordJoinsItsIsotropicDirections) {
  auto L = fixtures::quartic();
  auto diag = diagonalize(L);
  // q(sC + tF) = -2s^2 + 6st vanishes at F and 3C + F.
  auto chord = wall_chord(L, diag, fixtures::named("delta"));
  EXPECT_TRUE(chord_has_endpoint(chord, klein_coords(L, diag, RationalVector(LatticeClass{0, 1, 0}))));
  EXPECT_TRUE(chord_has_endpoint(chord, klein_coords(L, diag, RationalVector(LatticeClass{3, 1, 0}))));
  ASSERT_EQ(chord.rational_endpoints.size(), 2u);
  for (const auto& e : chord.rational_endpoints) {
    EXPECT_EQ(pairing(L, e, e), 0);
    EXPECT_EQ(pairing(L, fixtures::named("delta"), e), 0);
  }
}

TEST(Disk, EtaChordPassesThroughTheSecondCusp) {
  auto L = fixtures::quartic();
  auto diag = diagonalize(L);
  LatticeClass cusp{1, 1, -1};
  EXPECT_EQ(pairing(L, fixtures::named("eta"), RationalVector(cusp)), 0);
  auto chord = wall_chord(L, diag, fixtures::named("eta"));
  EXPECT_TRUE(chord_has_endpoint(chord, klein_coords(L, diag, RationalVector(cusp))));
}

TEST(Disk, ChordEndpointsAreOnTheCircle) {
  auto L = fixtures::quartic();
  auto diag = diagonalize(L);
  oracle::Rng rng(61);
  for (int i = 0; i < 300; ++i) {
    LatticeClass w{rng.integer(-15, 15), rng.integer(-15, 15), rng.integer(-15, 15)};
    if (w.is_zero() || square(L, w) >= 0) continue;
    auto chord = wall_chord(L, diag, w);
    EXPECT_NEAR(norm2(chord.first), 1.0, 1e-9);
    EXPECT_NEAR(norm2(chord.second), 1.0, 1e-9);
    for (const auto& e : chord.rational_endpoints) {
      EXPECT_EQ(pairing(L, e, e), 0);
      EXPECT_EQ(pairing(L, w, e), 0);
    }
  }
  EXPECT_THROW(wall_chord(L, diag, LatticeClass{0, 1, 0}), precondition_error);
}

TEST(Disk, ColoursFollowResidueOrder) {
  auto L = fixtures::quartic();
  auto group = discriminant_group(L);
  auto colour = [&](const char* name) { return color_for(group, discriminant_image(L, group, fixtures::named(name))); };
  EXPECT_EQ(colour("alpha"), WallColor::black);
  for (const char* n : {"delta", "beta", "eta", "zeta"}) EXPECT_EQ(colour(n), WallColor::blue) << n;
  for (const char* n : {"eps", "gamma"}) EXPECT_EQ(colour(n), WallColor::red) << n;
  EXPECT_STREQ(stroke_of(WallColor::black), "#000000");
  EXPECT_STREQ(stroke_of(WallColor::blue), "#0000FF");
  EXPECT_STREQ(stroke_of(WallColor::red), "#FF0000");
}

TEST(Disk, FixtureSceneIsDeterministic) {
  auto L = fixtures::quartic();
  auto scene = build_scene(L, fixtures::table(), fixture_request());
  EXPECT_GE(scene.walls.size(), 30u);
  EXPECT_NO_THROW(scene.validate());
  EXPECT_TRUE(std::is_sorted(scene.walls.begin(), scene.walls.end(),
                             [](const SceneWall& a, const SceneWall& b) { return a.cls < b.cls; }));
  std::string a = render_svg(scene);
  std::string b = render_svg(build_scene(L, fixtures::table(), fixture_request()));
  EXPECT_EQ(a, b);

  std::regex line_re("<line ");
  auto count = std::distance(std::sregex_iterator(a.begin(), a.end(), line_re), std::sregex_iterator());
  EXPECT_EQ(static_cast<std::size_t>(count), scene.walls.size());
  EXPECT_NE(a.find("data-class=\"0,0,1\""), std::string::npos);
  EXPECT_EQ(a.find("-0.000000"), std::string::npos);
}

TEST(Disk, EmptySceneStillRenders) {
  auto L = fixtures::quartic();
  auto scene = build_scene(L, fixtures::table(), {base_point(), Rational(1, 1000), std::nullopt});
  EXPECT_TRUE(scene.walls.empty());
  auto svg = render_svg(scene);
  EXPECT_NE(svg.find("<circle cx=\"0\" cy=\"0\" r=\"1\""), std::string::npos);
  EXPECT_EQ(svg.find("<line "), std::string::npos);
  EXPECT_EQ(scene.markers.size(), 1u);
}

TEST(Disk, PathCrossesExactlyItsWalls) {
  auto L = fixtures::quartic();
  auto T = fixtures::table();
  ConePoint a(L, fixtures::chamber(1)), b(L, fixtures::chamber(4));
  auto f = factor_path(L, T, a, b, required_bound(L, a, b));
  ASSERT_EQ(f.status, PathStatus::ok);
  ASSERT_EQ(f.steps.size(), 3u);

  auto scene = build_scene(L, T, {base_point(), Rational(16), f});
  ASSERT_TRUE(scene.path);
  EXPECT_EQ(scene.path->size(), 5u);
  EXPECT_EQ(scene.markers.size(), 3u);

  std::set<LatticeClass> crossed;
  const auto& path = *scene.path;
  for (const auto& w : scene.walls)
    if (segments_cross(path.front(), path.back(), w.first, w.second)) crossed.insert(w.cls);
  std::set<LatticeClass> expected;
  for (const auto& s : f.steps) expected.insert(canonical_sign(s.wall_class));
  EXPECT_EQ(crossed, expected);

  auto svg = render_svg(scene);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
}

TEST(Disk, ValidateRejectsBadScenes) {
  DiskScene s;
  s.walls.push_back({LatticeClass{0, 0, 1}, "x", {0.5, 0}, {-1, 0}, WallColor::black});
  EXPECT_THROW(s.validate(), precondition_error);
  DiskScene m;
  m.markers.push_back({{1, 0}, "edge"});
  EXPECT_THROW(m.validate(), precondition_error);
}

TEST(Disk, WriteToAnUnwritablePathFails) {
  auto L = fixtures::quartic();
  auto scene = build_scene(L, fixtures::table(), {base_point(), Rational(1), std::nullopt});
  EXPECT_THROW(write_svg(scene, "/nonexistent-dir/out.svg"), io_error);
}
