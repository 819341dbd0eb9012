#pragma once

// Walls and chambers of the positive cone of a hyperbolic lattice: bounded
// enumeration of MBM wall classes, factorization of a straight path between
// two cone points into wall crossings, and grouping of the crossings into
// blocks containing exactly one codimension-two flop each.
//
// All decisions are exact. The bound B is the squared hyperbolic sine of the
// search radius: a wall x^perp is within distance arcsinh(sqrt(B)) of [p]
// iff q(x,p)^2 <= B |q(x)| q(p).

#include <optional>
#include <span>
#include <vector>

#include "hkcone/lattice.hpp"
#include "hkcone/mbm.hpp"

namespace hkcone {

// Point of the positive cone, q(x) > 0.
class ConePoint {
 public:
  ConePoint(const IntegralLattice& L, RationalVector coords);

  const RationalVector& coords() const { return coords_; }
  const Rational& square() const { return square_; }
  std::size_t size() const { return coords_.size(); }

  friend bool operator==(const ConePoint& a, const ConePoint& b) { return a.coords_ == b.coords_; }

 private:
  RationalVector coords_;
  Rational square_;
};

// Requires a hyperbolic lattice (signature (1, r-1)).
bool same_component(const IntegralLattice& L, const ConePoint& p, const ConePoint& q);

struct WallClass {
  LatticeClass cls;  // primitive, first nonzero coordinate positive
  OrbitSignature signature;
};

struct EnumerationOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Every primitive class (one per +-pair) whose signature is in the table and
// whose wall lies within the bound around `base`, sorted lexicographically.
std::vector<WallClass> enumerate_wall_classes(const IntegralLattice& L, const SignatureTable& table,
                                              const ConePoint& base, const Rational& bound,
                                              EnumerationOptions options = {});

// Per-coordinate box containing every candidate enumerate_wall_classes visits.
IntVector enumeration_box(const IntegralLattice& L, const SignatureTable& table, const ConePoint& base,
                          const Rational& bound);

struct CrossingTest {
  enum class Kind { none, crossing, endpoint_on_wall };
  Kind kind = Kind::none;
  Rational t;  // valid when kind == crossing
};

// Parameter t* in (0,1) where q(x, (1-t)a + t b) vanishes, if the sign flips.
CrossingTest crossing_parameter(const IntegralLattice& L, const LatticeClass& x, const ConePoint& a,
                                const ConePoint& b);

struct WallCrossing {
  LatticeClass wall_class;  // sign chosen so q(wall_class, a) > 0
  Rational t;
  OrbitSignature signature;
  int codimension = 1;
};

enum class PathStatus { ok, leaves_birational_cone, regular_in_codim_two };
const char* to_string(PathStatus status);

using Blocks = std::vector<std::vector<std::size_t>>;

struct FlopFactorization {
  ConePoint a;
  ConePoint b;
  bool perturbed = false;
  std::vector<WallCrossing> steps;  // t strictly increasing
  Blocks groups;                    // empty unless status == ok
  PathStatus status = PathStatus::regular_in_codim_two;
};

struct FactorOptions {
  bool allow_perturbation = true;
  EnumerationOptions enumeration;
};

// Smallest bound for which the ball around a + b covers the segment [a, b].
Rational required_bound(const IntegralLattice& L, const ConePoint& a, const ConePoint& b);

FlopFactorization factor_path(const IntegralLattice& L, const SignatureTable& table, const ConePoint& a,
                              const ConePoint& b, const Rational& bound, FactorOptions options = {});

// Cut before every codimension-two step except the first; anything after the
// last codimension-two step joins the final block.
Blocks group_hu_yau(std::span<const WallCrossing> steps);
Blocks group_hu_yau(std::span<const int> codimensions);

bool same_chamber(const IntegralLattice& L, const SignatureTable& table, const ConePoint& a, const ConePoint& b,
                  const Rational& bound);

}  // namespace hkcone
