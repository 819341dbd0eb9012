#include "hkcone/disk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hkcone/mukai.hpp"

namespace hkcone::disk {
namespace {

struct Frame {
  RatMatrix inverse_transform;
  double scale2;  // sqrt(|d2| / d1)
  double scale3;  // sqrt(|d3| / d1)
};

Frame frame_of(const IntegralLattice& L, const Diagonalization& diag) {
  if (L.rank() != 3) throw precondition_error("the Klein disk needs a rank-3 lattice");
  const auto& d = diag.diagonal;
  if (d.size() != 3 || d[0] <= 0 || d[1] >= 0 || d[2] >= 0)
    throw precondition_error("diagonalization must be (+, -, -) with the positive entry first");
  auto inv = inverse(diag.transform);
  if (!inv) throw precondition_error("diagonalizing transform is singular");
  Rational r2 = -d[1] / d[0];
  Rational r3 = -d[2] / d[0];
  return {*inv, std::sqrt(r2.get_d()), std::sqrt(r3.get_d())};
}

KleinPoint project(const Frame& f, long double y1, long double y2, long double y3) {
  if (y1 == 0) throw precondition_error("point at infinity of the Klein model (y1 = 0)");
  return {static_cast<double>(y2 / y1 * f.scale2), static_cast<double>(y3 / y1 * f.scale3)};
}

LatticeClass integral_primitive(const RatVector& v) {
  return canonical_sign(primitive_rescale(RationalVector(v)).primitive);
}

std::string num(double v) {
  if (std::fabs(v) < 5e-7) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string class_text(const LatticeClass& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += to_string(x.coords[i]);
  }
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

KleinPoint klein_coords(const IntegralLattice& L, const Diagonalization& diag, const RationalVector& x) {
  if (x.size() != L.rank()) throw precondition_error("vector length does not match lattice rank");
  if (square(L, x) < 0) throw precondition_error("Klein coordinates need q(x) >= 0");
  Frame f = frame_of(L, diag);
  RatVector y = f.inverse_transform * std::span<const Rational>(x.coords);
  if (y[0] == 0) throw precondition_error("point at infinity of the Klein model (y1 = 0)");
  Rational a = y[1] / y[0];
  Rational b = y[2] / y[0];
  return {a.get_d() * f.scale2, b.get_d() * f.scale3};
}

WallChord wall_chord(const IntegralLattice& L, const Diagonalization& diag, const LatticeClass& w) {
  if (square(L, w) >= 0) throw precondition_error("wall class must have negative square");
  Frame f = frame_of(L, diag);
  RatMatrix row(1, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    Integer s = 0;
    for (std::size_t k = 0; k < 3; ++k) s += w.coords[k] * L.gram()(k, j);
    row(0, j) = s;
  }
  auto basis = nullspace(row);
  if (basis.size() != 2) throw std::logic_error("orthogonal complement of a wall class is not a plane");
  RationalVector u1(integral_primitive(basis[0]));
  RationalVector u2(integral_primitive(basis[1]));
  Rational a = square(L, u1);
  Rational b = pairing(L, u1, u2);
  Rational c = square(L, u2);
  Rational disc = b * b - a * c;
  // q(w) < 0 on a (1,2) lattice makes w^perp hyperbolic, so disc > 0.
  if (disc <= 0) throw std::logic_error("wall misses the positive cone");

  WallChord chord;
  std::vector<std::pair<long double, long double>> st;  // (s, t) with q(s u1 + t u2) = 0
  Integer root;
  bool rational = disc.get_den() == 1 && exact_sqrt(disc.get_num(), root);
  if (a == 0) {
    rational = true;
    chord.rational_endpoints.push_back(u1);
    chord.rational_endpoints.push_back(RationalVector((-c) * u1 + (2 * b) * u2));
  } else if (rational) {
    for (int sgn : {-1, 1}) {
      Rational s = -b + sgn * Rational(root);
      chord.rational_endpoints.push_back(RationalVector(s * u1 + a * u2));
    }
  } else {
    long double sq = std::sqrt(static_cast<long double>(disc.get_d()));
    for (int sgn : {-1, 1})
      st.emplace_back(-static_cast<long double>(b.get_d()) + sgn * sq, static_cast<long double>(a.get_d()));
  }

  std::vector<KleinPoint> ends;
  if (rational) {
    for (auto& e : chord.rational_endpoints) {
      e = RationalVector(integral_primitive(e.coords));
      ends.push_back(klein_coords(L, diag, e));
    }
  } else {
    RatVector y1 = f.inverse_transform * std::span<const Rational>(u1.coords);
    RatVector y2 = f.inverse_transform * std::span<const Rational>(u2.coords);
    for (auto [s, t] : st) {
      long double y[3];
      for (std::size_t i = 0; i < 3; ++i)
        y[i] = s * static_cast<long double>(y1[i].get_d()) + t * static_cast<long double>(y2[i].get_d());
      ends.push_back(project(f, y[0], y[1], y[2]));
    }
  }
  // Fixed endpoint order: by u, then v.
  if (ends[1].u < ends[0].u || (ends[1].u == ends[0].u && ends[1].v < ends[0].v)) {
    std::swap(ends[0], ends[1]);
    if (rational) std::swap(chord.rational_endpoints[0], chord.rational_endpoints[1]);
  }
  chord.first = ends[0];
  chord.second = ends[1];
  return chord;
}

const char* stroke_of(WallColor color) {
  switch (color) {
    case WallColor::black: return "#000000";
    case WallColor::blue: return "#0000FF";
    case WallColor::red: return "#FF0000";
  }
  return "#000000";
}

WallColor color_for(const DiscriminantGroup& group, const Residue& residue) {
  Integer order = residue_order(group, residue);
  if (order == 1) return WallColor::black;
  if (order == 2) return WallColor::red;
  return WallColor::blue;
}

void DiskScene::validate() const {
  auto on_circle = [](const KleinPoint& p) { return std::fabs(std::hypot(p.u, p.v) - 1.0) <= 1e-9; };
  for (const auto& w : walls)
    if (!on_circle(w.first) || !on_circle(w.second))
      throw precondition_error("chord endpoint of wall " + class_text(w.cls) + " is off the unit circle");
  for (const auto& m : markers)
    if (std::hypot(m.at.u, m.at.v) >= 1.0) throw precondition_error("marker '" + m.label + "' is not inside the disk");
}

DiskScene build_scene(const IntegralLattice& L, const SignatureTable& table, const SceneRequest& request) {
  Diagonalization diag = diagonalize(L);
  DiscriminantGroup group = discriminant_group(L);
  ConePoint base(L, request.base);
  DiskScene scene;

  std::vector<LatticeClass> cusp_classes;
  for (const auto& wall : enumerate_wall_classes(L, table, base, request.bound)) {
    WallChord chord = wall_chord(L, diag, wall.cls);
    WallColor color = color_for(group, discriminant_image(L, group, wall.cls));
    scene.walls.push_back({wall.cls, wall.signature.name, chord.first, chord.second, color});
    for (const auto& e : chord.rational_endpoints) {
      LatticeClass c = canonical_sign(primitive_rescale(e).primitive);
      if (std::find(cusp_classes.begin(), cusp_classes.end(), c) == cusp_classes.end()) cusp_classes.push_back(c);
    }
  }
  std::sort(cusp_classes.begin(), cusp_classes.end());
  for (const auto& c : cusp_classes) scene.cusps.push_back(klein_coords(L, diag, RationalVector(c)));

  scene.markers.push_back({klein_coords(L, diag, request.base), "base"});
  if (request.path) {
    const auto& fp = *request.path;
    std::vector<KleinPoint> line{klein_coords(L, diag, fp.a.coords())};
    for (const auto& step : fp.steps) {
      RationalVector at((1 - step.t) * fp.a.coords() + step.t * fp.b.coords());
      line.push_back(klein_coords(L, diag, at));
    }
    line.push_back(klein_coords(L, diag, fp.b.coords()));
    scene.markers.push_back({line.front(), "a"});
    scene.markers.push_back({line.back(), "b"});
    scene.path = std::move(line);
  }
  scene.validate();
  return scene;
}

std::string render_svg(const DiskScene& scene) {
  std::ostringstream out;
  const std::string width = "0.004";
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"800\" height=\"800\">\n";
  out << "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888888\" stroke-width=\"" << width << "\"/>\n";

  std::vector<const SceneWall*> walls;
  for (const auto& w : scene.walls) walls.push_back(&w);
  std::sort(walls.begin(), walls.end(), [](const SceneWall* a, const SceneWall* b) { return a->cls < b->cls; });
  // SVG y grows downward; flip v so the picture has the usual orientation.
  for (const auto* w : walls) {
    out << "  <line x1=\"" << num(w->first.u) << "\" y1=\"" << num(-w->first.v) << "\" x2=\"" << num(w->second.u)
        << "\" y2=\"" << num(-w->second.v) << "\" stroke=\"" << stroke_of(w->color) << "\" stroke-width=\"" << width
        << "\" data-class=\"" << class_text(w->cls) << "\" data-orbit=\"" << escape(w->orbit) << "\"/>\n";
  }
  if (scene.path) {
    out << "  <polyline points=\"";
    for (std::size_t i = 0; i < scene.path->size(); ++i) {
      if (i) out << ' ';
      out << num((*scene.path)[i].u) << ',' << num(-(*scene.path)[i].v);
    }
    out << "\" fill=\"none\" stroke=\"#00A000\" stroke-width=\"0.008\"/>\n";
  }
  for (const auto& c : scene.cusps) {
    out << "  <circle cx=\"" << num(c.u) << "\" cy=\"" << num(-c.v) << "\" r=\"0.012\" fill=\"#888888\"/>\n";
  }
  for (const auto& m : scene.markers) {
    out << "  <circle cx=\"" << num(m.at.u) << "\" cy=\"" << num(-m.at.v)
        << "\" r=\"0.015\" fill=\"#00A000\"><title>" << escape(m.label) << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const DiskScene& scene, const std::filesystem::path& out) {
  std::ofstream file(out, std::ios::binary);
  if (!file) throw io_error("cannot open '" + out.string() + "' for writing");
  file << render_svg(scene);
  if (!file) throw io_error("failed writing '" + out.string() + "'");
}

}  // namespace hkcone::disk
