#pragma once

// Translation dynamics on an elliptic fiber modelled as the 2-torus group:
// exactly as (Q/Z)^2 or approximately as (R/Z)^2.
//
// A fiber is marked by the three points e0, e1, e2 where it meets the line C.
// The degree-three correspondence sends x to {x+e0+e1, x+e1+e2, x+e2+e0};
// x ~ y when those images meet, and the generated classes are the orbits of
// x under translations by t1 = e1-e0 and t2 = e2-e1 (t3 = e0-e2 = -t1-t2).

#include <optional>
#include <variant>
#include <vector>

#include "hkcone/arith.hpp"

namespace hkcone::torus {

enum class Mode { exact, real };

// Tolerance on the sup-distance for real-mode point identification.
inline constexpr double kRealTolerance = 1e-12;

class TorusPoint {
 public:
  // Coordinates are reduced into [0, 1).
  static TorusPoint exact(const Rational& x, const Rational& y);
  // `irrational` records, by construction, that the point is known to be
  // non-torsion (e.g. built from sqrt(2)).
  static TorusPoint real(double x, double y, bool irrational = false);

  Mode mode() const { return std::holds_alternative<ExactCoords>(coords_) ? Mode::exact : Mode::real; }
  bool irrational() const { return irrational_; }

  const Rational& exact_x() const;
  const Rational& exact_y() const;
  double real_x() const;
  double real_y() const;

  TorusPoint operator+(const TorusPoint& other) const;
  TorusPoint operator-(const TorusPoint& other) const;
  TorusPoint operator-() const;
  // n-fold sum.
  TorusPoint times(long n) const;

  // Exact equality in exact mode; sup-distance <= kRealTolerance in real mode.
  bool same_as(const TorusPoint& other) const;
  // Canonical total order: by x then y.
  friend bool operator<(const TorusPoint& a, const TorusPoint& b);

 private:
  struct ExactCoords {
    Rational x, y;
  };
  struct RealCoords {
    double x, y;
  };
  explicit TorusPoint(std::variant<ExactCoords, RealCoords> c, bool irrational = false)
      : coords_(std::move(c)), irrational_(irrational) {}

  std::variant<ExactCoords, RealCoords> coords_;
  bool irrational_ = false;
};

// Sup-metric distance on the torus.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

class MarkedFiber {
 public:
  MarkedFiber(TorusPoint e0, TorusPoint e1, TorusPoint e2);

  const TorusPoint& e0() const { return e0_; }
  const TorusPoint& e1() const { return e1_; }
  const TorusPoint& e2() const { return e2_; }
  Mode mode() const { return e0_.mode(); }

 private:
  TorusPoint e0_, e1_, e2_;
};

// Sorted, duplicates removed.
std::vector<TorusPoint> sigma_image(const MarkedFiber& f, const TorusPoint& x);

// Exact mode only.
bool related(const MarkedFiber& f, const TorusPoint& x, const TorusPoint& y);

struct Generators {
  TorusPoint t1, t2, t3;
};
Generators generators(const MarkedFiber& f);

struct Orbit {
  std::vector<TorusPoint> points;  // canonical order
  bool finite = false;
  std::size_t size() const { return points.size(); }
};

struct OrbitOptions {
  // Exact-mode closure refuses to materialize more points than this.
  std::size_t max_points = std::size_t{1} << 22;
};

// Exact mode: the full coset x + <t1, t2>, independent of depth.
// Real mode: {x + a t1 + b t2 : |a| + |b| <= depth}; finite is reported when
// the outermost shell adds no new point.
Orbit orbit(const MarkedFiber& f, const TorusPoint& x, unsigned depth, OrbitOptions options = {});

struct TorsionInfo {
  bool torsion = false;
  Integer order;  // 0 when not torsion
};
TorsionInfo is_torsion(const TorusPoint& p);

// Max over the grid {(i/grid, j/grid)} of the distance to the nearest point.
double covering_radius(const std::vector<TorusPoint>& points, unsigned grid);

}  // namespace hkcone::torus
