#include "hkcone/torus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

namespace hkcone::torus {
namespace {

Rational reduce(const Rational& v) {
  Rational r = v - Rational(hkcone::floor(v));
  r.canonicalize();
  return r;
}

double reduce(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0 || 1.0 - r < kRealTolerance) r = 0.0;
  return r;
}

double circle_distance(double a, double b) {
  double d = std::fabs(a - b);
  d = d - std::floor(d);
  return std::min(d, 1.0 - d);
}

void require_same_mode(const TorusPoint& a, const TorusPoint& b) {
  if (a.mode() != b.mode()) throw precondition_error("torus points of different modes");
}

// Sorted, tolerance-deduplicated copy (exact mode deduplicates exactly).
std::vector<TorusPoint> canonical_set(std::vector<TorusPoint> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<TorusPoint> out;
  for (auto& p : pts) {
    bool dup = false;
    if (p.mode() == Mode::exact) {
      dup = !out.empty() && out.back().same_as(p);
    } else {
      for (auto it = out.rbegin(); it != out.rend(); ++it) {
        if (p.real_x() - it->real_x() > kRealTolerance) break;
        if (it->same_as(p)) {
          dup = true;
          break;
        }
      }
      // Wrap-around near x = 1 against points near x = 0.
      for (auto it = out.begin(); !dup && it != out.end() && it->real_x() <= kRealTolerance; ++it)
        if (it->same_as(p)) dup = true;
    }
    if (!dup) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

TorusPoint TorusPoint::exact(const Rational& x, const Rational& y) {
  return TorusPoint(ExactCoords{reduce(x), reduce(y)});
}

TorusPoint TorusPoint::real(double x, double y, bool irrational) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw precondition_error("torus coordinates must be finite");
  return TorusPoint(RealCoords{reduce(x), reduce(y)}, irrational);
}

const Rational& TorusPoint::exact_x() const {
  if (mode() != Mode::exact) throw precondition_error("exact coordinate requested from a real-mode point");
  return std::get<ExactCoords>(coords_).x;
}
const Rational& TorusPoint::exact_y() const {
  if (mode() != Mode::exact) throw precondition_error("exact coordinate requested from a real-mode point");
  return std::get<ExactCoords>(coords_).y;
}
double TorusPoint::real_x() const {
  if (auto* e = std::get_if<ExactCoords>(&coords_)) return e->x.get_d();
  return std::get<RealCoords>(coords_).x;
}
double TorusPoint::real_y() const {
  if (auto* e = std::get_if<ExactCoords>(&coords_)) return e->y.get_d();
  return std::get<RealCoords>(coords_).y;
}

TorusPoint TorusPoint::operator+(const TorusPoint& other) const {
  require_same_mode(*this, other);
  if (mode() == Mode::exact) return exact(exact_x() + other.exact_x(), exact_y() + other.exact_y());
  return real(real_x() + other.real_x(), real_y() + other.real_y());
}

TorusPoint TorusPoint::operator-() const {
  if (mode() == Mode::exact) return exact(-exact_x(), -exact_y());
  return real(-real_x(), -real_y(), irrational_);
}

TorusPoint TorusPoint::operator-(const TorusPoint& other) const { return *this + (-other); }

TorusPoint TorusPoint::times(long n) const {
  if (mode() == Mode::exact) return exact(exact_x() * n, exact_y() * n);
  return real(real_x() * static_cast<double>(n), real_y() * static_cast<double>(n));
}

bool TorusPoint::same_as(const TorusPoint& other) const {
  require_same_mode(*this, other);
  if (mode() == Mode::exact) return exact_x() == other.exact_x() && exact_y() == other.exact_y();
  return torus_distance(*this, other) <= kRealTolerance;
}

bool operator<(const TorusPoint& a, const TorusPoint& b) {
  require_same_mode(a, b);
  if (a.mode() == Mode::exact) {
    if (a.exact_x() != b.exact_x()) return a.exact_x() < b.exact_x();
    return a.exact_y() < b.exact_y();
  }
  if (a.real_x() != b.real_x()) return a.real_x() < b.real_x();
  return a.real_y() < b.real_y();
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  return std::max(circle_distance(a.real_x(), b.real_x()), circle_distance(a.real_y(), b.real_y()));
}

MarkedFiber::MarkedFiber(TorusPoint e0, TorusPoint e1, TorusPoint e2)
    : e0_(std::move(e0)), e1_(std::move(e1)), e2_(std::move(e2)) {
  require_same_mode(e0_, e1_);
  require_same_mode(e0_, e2_);
}

std::vector<TorusPoint> sigma_image(const MarkedFiber& f, const TorusPoint& x) {
  require_same_mode(f.e0(), x);
  return canonical_set({x + f.e0() + f.e1(), x + f.e1() + f.e2(), x + f.e2() + f.e0()});
}

bool related(const MarkedFiber& f, const TorusPoint& x, const TorusPoint& y) {
  if (f.mode() != Mode::exact || x.mode() != Mode::exact || y.mode() != Mode::exact)
    throw precondition_error("the relation is only decided in exact mode");
  auto a = sigma_image(f, x);
  auto b = sigma_image(f, y);
  for (const auto& p : a)
    for (const auto& q : b)
      if (p.same_as(q)) return true;
  return false;
}

Generators generators(const MarkedFiber& f) {
  return {f.e1() - f.e0(), f.e2() - f.e1(), f.e0() - f.e2()};
}

Orbit orbit(const MarkedFiber& f, const TorusPoint& x, unsigned depth, OrbitOptions options) {
  require_same_mode(f.e0(), x);
  Generators g = generators(f);
  Orbit out;

  if (f.mode() == Mode::exact) {
    // Closure under +-t1, +-t2; (Q/Z)^2 is torsion so this terminates.
    std::set<TorusPoint> seen{x};
    std::deque<TorusPoint> frontier{x};
    const TorusPoint steps[] = {g.t1, -g.t1, g.t2, -g.t2};
    while (!frontier.empty()) {
      TorusPoint p = frontier.front();
      frontier.pop_front();
      for (const auto& s : steps) {
        TorusPoint next = p + s;
        if (seen.insert(next).second) {
          if (seen.size() > options.max_points)
            throw precondition_error("exact orbit exceeds " + std::to_string(options.max_points) + " points");
          frontier.push_back(next);
        }
      }
    }
    out.points.assign(seen.begin(), seen.end());
    out.finite = true;
    return out;
  }

  const long d = static_cast<long>(depth);
  std::vector<TorusPoint> inner, shell;
  for (long a = -d; a <= d; ++a) {
    long rest = d - std::labs(a);
    for (long b = -rest; b <= rest; ++b) {
      TorusPoint p = x + g.t1.times(a) + g.t2.times(b);
      (std::labs(a) + std::labs(b) == d ? shell : inner).push_back(std::move(p));
    }
  }
  std::vector<TorusPoint> inner_set = canonical_set(inner);
  std::vector<TorusPoint> all = inner;
  all.insert(all.end(), shell.begin(), shell.end());
  out.points = canonical_set(std::move(all));
  out.finite = depth > 0 && out.points.size() == inner_set.size();
  return out;
}

TorsionInfo is_torsion(const TorusPoint& p) {
  if (p.mode() == Mode::exact) {
    return {true, lcm(p.exact_x().get_den(), p.exact_y().get_den())};
  }
  if (!p.irrational()) throw precondition_error("torsion of a real-mode point is undecidable without the irrationality flag");
  return {false, Integer(0)};
}

double covering_radius(const std::vector<TorusPoint>& points, unsigned grid) {
  if (points.empty()) throw precondition_error("covering radius of an empty set");
  if (grid == 0) throw precondition_error("grid must be positive");

  // Bucket the points so each query only inspects nearby cells.
  const std::size_t k = std::clamp<std::size_t>(static_cast<std::size_t>(std::sqrt(double(points.size()))), 1, 512);
  std::vector<std::vector<std::pair<double, double>>> cells(k * k);
  auto cell_of = [k](double v) { return std::min(k - 1, static_cast<std::size_t>(v * double(k))); };
  for (const auto& p : points) cells[cell_of(p.real_x()) * k + cell_of(p.real_y())].emplace_back(p.real_x(), p.real_y());

  double radius = 0.0;
  const long kk = static_cast<long>(k);
  for (unsigned i = 0; i < grid; ++i) {
    for (unsigned j = 0; j < grid; ++j) {
      const double sx = double(i) / grid;
      const double sy = double(j) / grid;
      const long cx = static_cast<long>(cell_of(sx));
      const long cy = static_cast<long>(cell_of(sy));
      double best = std::numeric_limits<double>::infinity();
      for (long ring = 0; ring <= kk / 2 + 1; ++ring) {
        for (long dx = -ring; dx <= ring; ++dx)
          for (long dy = -ring; dy <= ring; ++dy) {
            if (std::max(std::labs(dx), std::labs(dy)) != ring) continue;
            const auto& cell = cells[static_cast<std::size_t>(((cx + dx) % kk + kk) % kk) * k +
                                     static_cast<std::size_t>(((cy + dy) % kk + kk) % kk)];
            for (const auto& [px, py] : cell)
              best = std::min(best, std::max(circle_distance(sx, px), circle_distance(sy, py)));
          }
        // Cells at ring distance > ring are at least ring / k away.
        if (best <= double(ring) / double(k)) break;
      }
      radius = std::max(radius, best);
    }
  }
  return radius;
}

}  // namespace hkcone::torus
