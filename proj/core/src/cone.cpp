#include "hkcone/cone.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace hkcone {
namespace {

void require_hyperbolic(const IntegralLattice& L) {
  if (!is_hyperbolic(L)) throw precondition_error("lattice is not of signature (1, r-1)");
}

RationalVector along(const ConePoint& a, const ConePoint& b, const Rational& t) {
  return RationalVector((1 - t) * a.coords() + t * b.coords());
}

// sinh^2 of the hyperbolic distance between [c] and [m].
Rational sinh_squared(const IntegralLattice& L, const RationalVector& c, const RationalVector& m) {
  Rational qc = square(L, c);
  Rational qm = square(L, m);
  Rational cm = pairing(L, c, m);
  return (cm * cm - qc * qm) / (qc * qm);
}

struct Search {
  const IntegralLattice& L;
  const Classifier& classifier;
  RationalVector base;
  Rational base_square;
  Rational bound;
  std::vector<Integer> squares;
  IntVector box;
};

bool in_region(const Search& s, const LatticeClass& x, const Integer& sq) {
  Rational xp = pairing(s.L, x, s.base);
  return xp * xp <= s.bound * Rational(abs(sq)) * s.base_square;
}

// Scans a slab of the box with the first coordinate in [lo, hi]; the last
// coordinate is solved from q(x) = s instead of scanned.
std::vector<WallClass> scan_slab(const Search& s, const Integer& lo, const Integer& hi) {
  const std::size_t r = s.L.rank();
  const IntMatrix& g = s.L.gram();
  const std::size_t last = r - 1;
  std::vector<WallClass> found;

  auto consider = [&](IntVector coords, const Integer& sq) {
    LatticeClass x(std::move(coords));
    if (x.is_zero() || canonical_sign(x) != x) return;
    if (content(x.coords) != 1) return;
    if (!in_region(s, x, sq)) return;
    const OrbitSignature* row = s.classifier.lookup(x, sq);
    if (row) found.push_back({std::move(x), *row});
  };

  IntVector x(r, Integer(0));
  if (r == 1) {
    for (Integer t = lo; t <= hi; ++t) {
      IntVector c{t};
      Integer sq = g(0, 0) * t * t;
      for (const auto& target : s.squares)
        if (sq == target) consider(c, sq);
    }
    return found;
  }

  // Odometer over coordinates 0..r-2 with coordinate 0 restricted to [lo, hi].
  x[0] = lo;
  for (std::size_t i = 1; i < last; ++i) x[i] = -s.box[i];
  while (true) {
    Integer head = 0;   // sum_{i,j<last} x_i g_ij x_j
    Integer cross = 0;  // sum_{i<last} g_{i,last} x_i
    for (std::size_t i = 0; i < last; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < last; ++j) head += x[i] * g(i, j) * x[j];
      cross += g(i, last) * x[i];
    }
    const Integer& gnn = g(last, last);
    const Integer& tmax = s.box[last];
    for (const auto& target : s.squares) {
      // gnn t^2 + 2 cross t + head - target = 0
      auto try_t = [&](const Integer& t) {
        if (abs(t) > tmax) return;
        IntVector c = x;
        c[last] = t;
        consider(std::move(c), target);
      };
      Integer c0 = head - target;
      if (gnn != 0) {
        Integer disc = cross * cross - gnn * c0;
        Integer root;
        if (!exact_sqrt(disc, root)) continue;
        for (int sgn : {-1, 1}) {
          if (sgn == 1 && root == 0) break;
          Integer num = -cross + sgn * root;
          if (num % gnn == 0) try_t(Integer(num / gnn));
        }
      } else if (cross != 0) {
        Integer num = -c0;
        Integer den = 2 * cross;
        if (num % den == 0) try_t(Integer(num / den));
      } else if (c0 == 0) {
        for (Integer t = -tmax; t <= tmax; ++t) try_t(t);
      }
    }

    // advance
    std::size_t k = last;
    while (k > 0) {
      --k;
      Integer limit = k == 0 ? hi : s.box[k];
      if (x[k] < limit) {
        ++x[k];
        for (std::size_t j = k + 1; j < last; ++j) x[j] = -s.box[j];
        break;
      }
      if (k == 0) return found;
    }
  }
}

}  // namespace

ConePoint::ConePoint(const IntegralLattice& L, RationalVector coords) : coords_(std::move(coords)) {
  if (coords_.size() != L.rank()) throw precondition_error("cone point length does not match lattice rank");
  square_ = hkcone::square(L, coords_);
  if (square_ <= 0) throw precondition_error("cone point must have positive square, got " + to_string(square_));
}

bool same_component(const IntegralLattice& L, const ConePoint& p, const ConePoint& q) {
  require_hyperbolic(L);
  return pairing(L, p.coords(), q.coords()) > 0;
}

IntVector enumeration_box(const IntegralLattice& L, const SignatureTable& table, const ConePoint& base,
                          const Rational& bound) {
  require_hyperbolic(L);
  if (bound <= 0) throw precondition_error("bound must be positive");
  const std::size_t r = L.rank();
  RatVector gp = to_rational(L.gram()) * std::span<const Rational>(base.coords().coords);
  // Majorant -q + 2 q(., p)^2 / q(p): positive definite on a hyperbolic lattice.
  RatMatrix majorant = -to_rational(L.gram()) + (Rational(2) / base.square()) * outer(gp, gp);
  auto inv = inverse(majorant);
  if (!inv) throw std::logic_error("majorant is singular");
  Integer max_abs_square = 0;
  for (const auto& s : table.squares()) max_abs_square = std::max(max_abs_square, Integer(abs(s)));
  // q(x) = s and the region inequality give majorant(x) <= |s| (1 + 2B).
  Rational radius = Rational(max_abs_square) * (1 + 2 * bound);
  IntVector box(r);
  for (std::size_t i = 0; i < r; ++i) box[i] = floor_sqrt(radius * (*inv)(i, i));
  return box;
}

std::vector<WallClass> enumerate_wall_classes(const IntegralLattice& L, const SignatureTable& table,
                                              const ConePoint& base, const Rational& bound,
                                              EnumerationOptions options) {
  if (table.empty()) throw precondition_error("signature table is empty");
  Classifier classifier(L, table);
  Search s{L, classifier, base.coords(), base.square(), bound, table.squares(),
           enumeration_box(L, table, base, bound)};

  // Canonical sign puts the first nonzero coordinate > 0, so x_0 >= 0.
  const Integer lo = 0;
  const Integer hi = s.box[0];
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  Integer span_size = hi - lo + 1;
  if (span_size < threads) threads = static_cast<unsigned>(span_size.get_ui());

  std::vector<WallClass> walls;
  if (threads <= 1) {
    walls = scan_slab(s, lo, hi);
  } else {
    std::vector<std::future<std::vector<WallClass>>> parts;
    Integer chunk = (span_size + threads - 1) / threads;
    for (Integer start = lo; start <= hi; start += chunk) {
      Integer stop = std::min(Integer(start + chunk - 1), hi);
      parts.push_back(std::async(std::launch::async, [&s, start, stop] { return scan_slab(s, start, stop); }));
    }
    for (auto& p : parts) {
      auto part = p.get();
      walls.insert(walls.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  }
  std::sort(walls.begin(), walls.end(), [](const WallClass& a, const WallClass& b) { return a.cls < b.cls; });
  return walls;
}

CrossingTest crossing_parameter(const IntegralLattice& L, const LatticeClass& x, const ConePoint& a,
                                const ConePoint& b) {
  Rational xa = pairing(L, x, a.coords());
  Rational xb = pairing(L, x, b.coords());
  if (xa == 0 || xb == 0) return {CrossingTest::Kind::endpoint_on_wall, 0};
  if ((xa > 0) == (xb > 0)) return {};
  return {CrossingTest::Kind::crossing, xa / (xa - xb)};
}

const char* to_string(PathStatus status) {
  switch (status) {
    case PathStatus::ok:
      return "ok";
    case PathStatus::leaves_birational_cone:
      return "leaves_birational_cone";
    case PathStatus::regular_in_codim_two:
      return "regular_in_codim_two";
  }
  return "unknown";
}

Rational required_bound(const IntegralLattice& L, const ConePoint& a, const ConePoint& b) {
  require_hyperbolic(L);
  if (!same_component(L, a, b)) throw precondition_error("endpoints lie in different components of the positive cone");
  RationalVector m = a.coords() + b.coords();
  return std::max(sinh_squared(L, a.coords(), m), sinh_squared(L, b.coords(), m));
}

Blocks group_hu_yau(std::span<const int> codimensions) {
  Blocks blocks;
  bool seen_codim_two = false;
  for (std::size_t i = 0; i < codimensions.size(); ++i) {
    int c = codimensions[i];
    if (c == 1) throw precondition_error("divisorial crossing at step " + std::to_string(i) + " cannot be grouped");
    if (c == 2) {
      if (seen_codim_two) blocks.emplace_back();
      seen_codim_two = true;
    }
    if (blocks.empty()) blocks.emplace_back();
    blocks.back().push_back(i);
  }
  if (!seen_codim_two) throw precondition_error("path is regular in codimension two: no codimension-two flop");
  return blocks;
}

Blocks group_hu_yau(std::span<const WallCrossing> steps) {
  std::vector<int> codims;
  for (const auto& s : steps) codims.push_back(s.codimension);
  return group_hu_yau(codims);
}

namespace {

struct Scan {
  std::vector<WallCrossing> steps;
  bool a_on_wall = false;
  bool b_on_wall = false;
  bool coincident = false;
  bool degenerate() const { return a_on_wall || b_on_wall || coincident; }
};

Scan scan_segment(const IntegralLattice& L, const SignatureTable& table, const ConePoint& a, const ConePoint& b,
                  const Rational& bound, const EnumerationOptions& options) {
  RationalVector mid = a.coords() + b.coords();
  ConePoint base(L, mid);
  for (const ConePoint* end : {&a, &b}) {
    if (sinh_squared(L, end->coords(), mid) > bound) {
      throw precondition_error("bound " + to_string(bound) + " is too small to cover the segment (need at least " +
                               to_string(required_bound(L, a, b)) + ")");
    }
  }
  Scan scan;
  if (a == b) return scan;
  for (auto& wall : enumerate_wall_classes(L, table, base, bound, options)) {
    Rational xa = pairing(L, wall.cls, a.coords());
    Rational xb = pairing(L, wall.cls, b.coords());
    if (xa == 0) scan.a_on_wall = true;
    if (xb == 0) scan.b_on_wall = true;
    CrossingTest c = crossing_parameter(L, wall.cls, a, b);
    if (c.kind != CrossingTest::Kind::crossing) continue;
    LatticeClass oriented = xa > 0 ? wall.cls : -wall.cls;
    int codim = wall.signature.codimension;
    scan.steps.push_back({std::move(oriented), c.t, std::move(wall.signature), codim});
  }
  std::sort(scan.steps.begin(), scan.steps.end(), [](const WallCrossing& x, const WallCrossing& y) {
    if (x.t != y.t) return x.t < y.t;
    return x.wall_class < y.wall_class;
  });
  for (std::size_t i = 1; i < scan.steps.size(); ++i)
    if (scan.steps[i].t == scan.steps[i - 1].t) scan.coincident = true;
  for (const auto& step : scan.steps) {
    if (square(L, along(a, b, step.t)) <= 0) throw std::logic_error("segment left the positive cone");
  }
  return scan;
}

Rational initial_epsilon(const RationalVector& v) {
  Integer d = 1;
  for (const auto& c : v.coords) d = lcm(d, c.get_den());
  return Rational(1, 64 * d);
}

constexpr int kMaxPerturbations = 64;

}  // namespace

FlopFactorization factor_path(const IntegralLattice& L, const SignatureTable& table, const ConePoint& a,
                              const ConePoint& b, const Rational& bound, FactorOptions options) {
  require_hyperbolic(L);
  if (bound <= 0) throw precondition_error("bound must be positive");
  if (!same_component(L, a, b)) throw precondition_error("endpoints lie in different components of the positive cone");

  ConePoint start = a;
  ConePoint end = b;
  Scan scan = scan_segment(L, table, start, end, bound, options.enumeration);
  bool perturbed = false;

  if (scan.degenerate()) {
    if (!options.allow_perturbation) {
      throw precondition_error("degenerate segment (endpoint on a wall or coincident crossings) and perturbation disabled");
    }
    const std::size_t r = L.rank();
    // A perturbed segment may need a slightly larger ball; enlarging the
    // bound only adds candidate walls, so no crossing is lost.
    auto covering = [&](const ConePoint& p, const ConePoint& q) { return std::max(bound, required_bound(L, p, q)); };

    // An endpoint on a wall lies in no open chamber; move it off first.
    if (scan.a_on_wall) {
      Rational eps = initial_epsilon(start.coords());
      bool moved = false;
      for (int k = 0; k < kMaxPerturbations && !moved; ++k, eps /= 2) {
        RationalVector shifted = start.coords();
        shifted.coords[static_cast<std::size_t>(k) % r] += eps;
        if (square(L, shifted) <= 0) continue;
        ConePoint candidate(L, shifted);
        if (!same_component(L, candidate, end)) continue;
        Scan s = scan_segment(L, table, candidate, end, covering(candidate, end), options.enumeration);
        if (s.a_on_wall) continue;
        start = candidate;
        scan = std::move(s);
        moved = true;
      }
      if (!moved) throw precondition_error("could not perturb the start point off the walls");
      perturbed = true;
    }

    if (scan.degenerate()) {
      const bool end_was_on_wall = scan.b_on_wall;
      Rational eps = initial_epsilon(end.coords());
      bool moved = false;
      for (int k = 0; k < kMaxPerturbations && !moved; ++k, eps /= 2) {
        RationalVector shifted = end.coords();
        shifted.coords[static_cast<std::size_t>(k) % r] += eps;
        if (square(L, shifted) <= 0) continue;
        ConePoint candidate(L, shifted);
        if (!same_component(L, start, candidate)) continue;
        Scan s = scan_segment(L, table, start, candidate, covering(start, candidate), options.enumeration);
        if (s.degenerate()) continue;
        if (!end_was_on_wall) {
          // The perturbed endpoint must stay in the original endpoint's chamber.
          Scan local = scan_segment(L, table, end, candidate, covering(end, candidate), options.enumeration);
          if (local.degenerate() || !local.steps.empty()) continue;
        }
        end = candidate;
        scan = std::move(s);
        moved = true;
      }
      if (!moved) throw precondition_error("perturbation failed after 64 attempts");
      perturbed = true;
    }
  }

  FlopFactorization out{start, end, perturbed, std::move(scan.steps), {}, PathStatus::ok};
  bool divisorial = false;
  bool codim_two = false;
  for (const auto& s : out.steps) {
    divisorial = divisorial || s.codimension == 1;
    codim_two = codim_two || s.codimension == 2;
  }
  if (divisorial) {
    out.status = PathStatus::leaves_birational_cone;
  } else if (!codim_two) {
    out.status = PathStatus::regular_in_codim_two;
  } else {
    out.groups = group_hu_yau(std::span<const WallCrossing>(out.steps));
  }
  return out;
}

bool same_chamber(const IntegralLattice& L, const SignatureTable& table, const ConePoint& a, const ConePoint& b,
                  const Rational& bound) {
  return factor_path(L, table, a, b, bound).steps.empty();
}

}  // namespace hkcone
