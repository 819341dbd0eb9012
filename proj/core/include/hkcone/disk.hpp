#pragma once

// Klein-disk picture of the projectivized positive cone of a rank-3
// hyperbolic lattice. Walls x^perp become straight chords; floating point is
// used only for the final projection.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hkcone/cone.hpp"
#include "hkcone/lattice.hpp"
#include "hkcone/mbm.hpp"

namespace hkcone::disk {

struct KleinPoint {
  double u = 0.0;
  double v = 0.0;
};

// Klein coordinates of a vector with q(x) >= 0; the diagonalization must have
// its single positive entry first. Projective, so x and -x agree.
KleinPoint klein_coords(const IntegralLattice& L, const Diagonalization& diag, const RationalVector& x);

struct WallChord {
  KleinPoint first;
  KleinPoint second;
  // Isotropic endpoints of w^perp when they are rational (cusps).
  std::vector<RationalVector> rational_endpoints;
};

WallChord wall_chord(const IntegralLattice& L, const Diagonalization& diag, const LatticeClass& w);

enum class WallColor { black, blue, red };
const char* stroke_of(WallColor color);
// Order 1 -> black, order 2 -> red, otherwise blue ("0", "2" and "+-1" mod 4).
WallColor color_for(const DiscriminantGroup& group, const Residue& residue);

struct SceneWall {
  LatticeClass cls;
  std::string orbit;
  KleinPoint first;
  KleinPoint second;
  WallColor color = WallColor::black;
};

struct SceneMarker {
  KleinPoint at;
  std::string label;
};

struct DiskScene {
  std::vector<SceneWall> walls;  // sorted by class
  std::vector<SceneMarker> markers;
  std::vector<KleinPoint> cusps;
  std::optional<std::vector<KleinPoint>> path;

  // Chord endpoints within 1e-9 of the unit circle, markers strictly inside.
  void validate() const;
};

struct SceneRequest {
  RationalVector base;
  Rational bound;
  std::optional<FlopFactorization> path;
};

DiskScene build_scene(const IntegralLattice& L, const SignatureTable& table, const SceneRequest& request);

// Deterministic SVG document for the scene.
std::string render_svg(const DiskScene& scene);
void write_svg(const DiskScene& scene, const std::filesystem::path& out);

}  // namespace hkcone::disk
