// hkcone: command-line front end. Data goes to stdout (or --out), diagnostics
// to stderr. Exit status 0 on success, 2 on precondition violations, 1 on I/O
// errors.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hkcone/cone.hpp"
#include "hkcone/disk.hpp"
#include "hkcone/io.hpp"
#include "hkcone/lattice.hpp"
#include "hkcone/mbm.hpp"
#include "hkcone/mukai.hpp"
#include "hkcone/symplectic.hpp"
#include "hkcone/torus.hpp"

namespace fs = std::filesystem;
using namespace hkcone;
using io::Json;

namespace {

int verbosity = 0;

void note(const std::string& msg) {
  if (verbosity > 0) std::cerr << "hkcone: " << msg << '\n';
}

RatVector parse_vector(const std::string& text, std::optional<std::size_t> expected = std::nullopt) {
  RatVector v;
  for (const auto& item : split_list(text)) v.push_back(parse_rational_lenient(item));
  if (v.empty()) throw precondition_error("empty vector '" + text + "'");
  if (expected && v.size() != *expected)
    throw precondition_error("expected " + std::to_string(*expected) + " coordinates, got '" + text + "'");
  return v;
}

LatticeClass parse_class(const std::string& text, std::size_t rank) {
  RatVector v = parse_vector(text, rank);
  if (!is_integral(v)) throw precondition_error("class '" + text + "' must have integer coordinates");
  IntVector c;
  for (const auto& x : v) c.push_back(x.get_num());
  return LatticeClass(std::move(c));
}

Rational parse_bound(const std::string& text) {
  Rational b = parse_rational_lenient(text);
  if (b <= 0) throw precondition_error("bound must be positive");
  return b;
}

void emit(const Json& doc, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << io::dump(doc);
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw io_error("cannot open '" + out + "' for writing");
  f << io::dump(doc);
  if (!f) throw io_error("failed writing '" + out + "'");
}

// Torus coordinate: "p/q", a decimal, or "sqrt(n)". Sets `irrational` when
// sqrt of a non-square occurs.
double parse_real_coordinate(const std::string& raw, bool& irrational) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.rfind("sqrt(", 0) == 0 && text.back() == ')') {
    Integer n = parse_integer(text.substr(5, text.size() - 6));
    if (n < 0) throw precondition_error("sqrt of a negative number");
    Integer root;
    if (!exact_sqrt(n, root)) irrational = true;
    return std::sqrt(n.get_d());
  }
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size()) throw io_error("cannot parse coordinate '" + raw + "'");
    return v;
  }
  return parse_rational_lenient(text).get_d();
}

struct Common {
  std::string lattice;
  std::string table;
  std::string out;
};

IntegralLattice require_lattice(const Common& c) { return io::load_lattice(c.lattice); }
SignatureTable require_table(const Common& c) { return io::load_table(c.table); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walls, chambers and flops of hyperkaehler positive cones"};
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", verbosity, "Diagnostics on stderr");

  Common common;
  std::function<int()> action;

  // classify
  std::string class_text;
  auto* classify_cmd = app.add_subcommand("classify", "Orbit signature of a primitive negative class");
  classify_cmd->add_option("--lattice", common.lattice, "Lattice JSON")->required();
  classify_cmd->add_option("--table", common.table, "Signature table JSON")->required();
  classify_cmd->add_option("--class", class_text, "Coordinates, e.g. 4,0,-1")->required();
  classify_cmd->callback([&] {
    action = [&] {
      IntegralLattice L = require_lattice(common);
      SignatureTable table = require_table(common);
      LatticeClass x = parse_class(class_text, L.rank());
      auto sig = classify(L, table, x);
      Json doc = Json::object();
      if (sig) {
        doc = io::to_json(*sig);
      } else {
        doc["orbit"] = nullptr;
        doc["square"] = io::to_json(square(L, x));
        doc["divisibility"] = io::to_json(divisibility(L, x));
      }
      emit(doc, "");
      return 0;
    };
  });

  // enumerate-walls
  std::string base_text, bound_text;
  unsigned threads = 0;
  auto* enum_cmd = app.add_subcommand("enumerate-walls", "MBM wall classes near a base point");
  enum_cmd->add_option("--lattice", common.lattice, "Lattice JSON")->required();
  enum_cmd->add_option("--table", common.table, "Signature table JSON")->required();
  enum_cmd->add_option("--base", base_text, "Base point, e.g. 4,4,-1")->required();
  enum_cmd->add_option("--bound", bound_text, "Bound B (rational)")->required();
  enum_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  enum_cmd->add_option("--out", common.out, "Output file (default stdout)");
  enum_cmd->callback([&] {
    action = [&] {
      IntegralLattice L = require_lattice(common);
      SignatureTable table = require_table(common);
      ConePoint base(L, RationalVector(parse_vector(base_text, L.rank())));
      Rational bound = parse_bound(bound_text);
      auto start = std::chrono::steady_clock::now();
      auto walls = enumerate_wall_classes(L, table, base, bound, {threads});
      note("enumerated " + std::to_string(walls.size()) + " walls in " +
           std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()) + " s");
      Json list = Json::array();
      for (const auto& w : walls) {
        Json item = Json::object();
        item["class"] = io::to_json(w.cls);
        Json sig = io::to_json(w.signature);
        for (auto& [key, v] : sig.items()) item[key] = v;
        list.push_back(std::move(item));
      }
      Json doc = Json::object();
      doc["base"] = io::to_json(base.coords());
      doc["bound"] = io::to_json(bound);
      doc["count"] = walls.size();
      doc["walls"] = std::move(list);
      emit(doc, common.out);
      return 0;
    };
  });

  // factor-path
  std::string from_path, to_path, path_bound_text;
  auto* factor_cmd = app.add_subcommand("factor-path", "Factor the segment between two chambers into flops");
  factor_cmd->add_option("--lattice", common.lattice, "Lattice JSON")->required();
  factor_cmd->add_option("--table", common.table, "Signature table JSON")->required();
  factor_cmd->add_option("--from", from_path, "Start point JSON")->required();
  factor_cmd->add_option("--to", to_path, "End point JSON")->required();
  factor_cmd->add_option("--bound", path_bound_text, "Bound B (default: smallest bound covering the segment)");
  factor_cmd->add_option("--out", common.out, "Output file (default stdout)");
  factor_cmd->callback([&] {
    action = [&] {
      IntegralLattice L = require_lattice(common);
      SignatureTable table = require_table(common);
      ConePoint a(L, io::load_point(from_path));
      ConePoint b(L, io::load_point(to_path));
      Rational bound = path_bound_text.empty() ? required_bound(L, a, b) : parse_bound(path_bound_text);
      note("bound " + to_string(bound));
      auto f = factor_path(L, table, a, b, bound);
      emit(io::factor_report(f), common.out);
      if (f.status != PathStatus::ok) {
        std::cerr << "hkcone: path status " << to_string(f.status) << '\n';
        return 2;
      }
      return 0;
    };
  });

  // render-cone
  std::string render_path;
  auto* render_cmd = app.add_subcommand("render-cone", "Klein-disk SVG of the walls near a base point");
  render_cmd->add_option("--lattice", common.lattice, "Lattice JSON")->required();
  render_cmd->add_option("--table", common.table, "Signature table JSON")->required();
  render_cmd->add_option("--base", base_text, "Base point")->required();
  render_cmd->add_option("--bound", bound_text, "Bound B")->required();
  render_cmd->add_option("--out", common.out, "SVG output file")->required();
  render_cmd->add_option("--path", render_path, "factor-path report to overlay");
  render_cmd->callback([&] {
    action = [&] {
      IntegralLattice L = require_lattice(common);
      SignatureTable table = require_table(common);
      disk::SceneRequest req{RationalVector(parse_vector(base_text, L.rank())), parse_bound(bound_text), std::nullopt};
      if (!render_path.empty()) req.path = io::factor_report_from_json(L, io::load_json_file(render_path));
      auto scene = disk::build_scene(L, table, req);
      disk::write_svg(scene, common.out);
      note("wrote " + std::to_string(scene.walls.size()) + " walls to " + common.out);
      return 0;
    };
  });

  // mukai-flop
  unsigned k = 0;
  std::string u_text, phi_text;
  auto* mukai_cmd = app.add_subcommand("mukai-flop", "Flop of a point of the local Mukai model");
  mukai_cmd->add_option("--k", k, "Codimension k (dim V = k + 1)")->required()->check(CLI::PositiveNumber);
  mukai_cmd->add_option("--u", u_text, "Vector u")->required();
  mukai_cmd->add_option("--phi", phi_text, "Covector phi with phi(u) = 0")->required();
  mukai_cmd->callback([&] {
    action = [&] {
      auto m = mukai::make_point(parse_vector(u_text, k + 1), parse_vector(phi_text, k + 1));
      auto d = mukai::flop(m);
      Json doc = Json::object();
      doc["phi"] = io::to_json(d.phi());
      doc["Astar"] = io::to_json(d.endomorphism());
      emit(doc, "");
      return 0;
    };
  });

  // symp-rank
  std::string omega_path, basis_path;
  auto* symp_cmd = app.add_subcommand("symp-rank", "Symplectic rank of a subspace");
  symp_cmd->add_option("--omega", omega_path, "JSON matrix of the symplectic form")->required();
  symp_cmd->add_option("--basis", basis_path, "JSON list of basis vectors (rows)")->required();
  symp_cmd->callback([&] {
    action = [&] {
      symplectic::SymplecticSpace s(io::load_matrix(omega_path));
      RatMatrix rows = io::load_matrix(basis_path);
      std::vector<RatVector> basis;
      for (std::size_t i = 0; i < rows.rows(); ++i) basis.push_back(rows.row(i));
      symplectic::Subspace w(std::move(basis));
      Json doc = Json::object();
      doc["rank"] = symplectic::restriction_rank(s, w);
      doc["isotropic"] = symplectic::is_isotropic(s, w);
      doc["coisotropic"] = symplectic::is_coisotropic(s, w);
      emit(doc, "");
      return 0;
    };
  });

  // sigma-orbit
  std::string e0_text, e1_text, e2_text, x_text;
  unsigned depth = 0, grid = 100;
  bool real = false;
  auto* sigma_cmd = app.add_subcommand("sigma-orbit", "Orbit of a point under the degree-three correspondence");
  sigma_cmd->add_option("--e0", e0_text, "Marked point e0, e.g. 0,0")->required();
  sigma_cmd->add_option("--e1", e1_text, "Marked point e1")->required();
  sigma_cmd->add_option("--e2", e2_text, "Marked point e2")->required();
  sigma_cmd->add_option("--x", x_text, "Start point")->required();
  sigma_cmd->add_option("--depth", depth, "Word length |a| + |b| in real mode")->required();
  sigma_cmd->add_flag("--real", real, "Floating-point torus; accepts decimals and sqrt(n)");
  sigma_cmd->add_option("--grid", grid, "Sample grid for the covering radius (real mode)")->check(CLI::PositiveNumber);
  sigma_cmd->callback([&] {
    action = [&] {
      auto point = [&](const std::string& text) {
        auto items = split_list(text);
        if (items.size() != 2) throw precondition_error("torus point needs two coordinates: '" + text + "'");
        if (!real) return torus::TorusPoint::exact(parse_rational_lenient(items[0]), parse_rational_lenient(items[1]));
        bool irrational = false;
        double px = parse_real_coordinate(items[0], irrational);
        double py = parse_real_coordinate(items[1], irrational);
        return torus::TorusPoint::real(px, py, irrational);
      };
      torus::MarkedFiber f(point(e0_text), point(e1_text), point(e2_text));
      auto x = point(x_text);
      auto orbit = torus::orbit(f, x, depth);
      auto g = torus::generators(f);
      auto coords = [&](const torus::TorusPoint& p) {
        Json a = Json::array();
        if (p.mode() == torus::Mode::exact) {
          a.push_back(io::to_json(p.exact_x()));
          a.push_back(io::to_json(p.exact_y()));
        } else {
          a.push_back(p.real_x());
          a.push_back(p.real_y());
        }
        return a;
      };
      Json doc = Json::object();
      doc["mode"] = real ? "real" : "exact";
      doc["size"] = orbit.size();
      doc["finite"] = orbit.finite;
      doc["generators"] = Json::array({coords(g.t1), coords(g.t2)});
      if (real) {
        doc["depth"] = depth;
        doc["grid"] = grid;
        doc["covering_radius"] = torus::covering_radius(orbit.points, grid);
      }
      emit(doc, "");
      return 0;
    };
  });

  // dual-solve
  std::vector<std::string> pairs;
  std::string names_path;
  auto* dual_cmd = app.add_subcommand("dual-solve", "Class with prescribed intersection numbers");
  dual_cmd->add_option("--lattice", common.lattice, "Lattice JSON")->required();
  dual_cmd->add_option("--pair", pairs, "NAME=VALUE; NAME is a basis name, a named class or coordinates")
      ->required()
      ->take_all();
  dual_cmd->add_option("--names", names_path, "Named classes JSON (default: named_classes.json beside the lattice)");
  dual_cmd->callback([&] {
    action = [&] {
      IntegralLattice L = require_lattice(common);
      io::NamedClasses named;
      fs::path names_file = names_path.empty() ? fs::path(common.lattice).parent_path() / "named_classes.json"
                                               : fs::path(names_path);
      if (!names_path.empty() || fs::exists(names_file)) named = io::load_named_classes(names_file);
      std::vector<PairingConstraint> constraints;
      for (const auto& p : pairs) {
        auto eq = p.rfind('=');
        if (eq == std::string::npos) throw precondition_error("--pair expects NAME=VALUE, got '" + p + "'");
        std::string lhs = p.substr(0, eq);
        Rational value = parse_rational_lenient(p.substr(eq + 1));
        LatticeClass cls;
        if (auto i = L.index_of(lhs)) {
          cls.coords.assign(L.rank(), 0);
          cls.coords[*i] = 1;
        } else if (auto it = std::find_if(named.begin(), named.end(), [&](const auto& n) { return n.first == lhs; });
                   it != named.end()) {
          cls = it->second;
        } else if (lhs.find(',') != std::string::npos) {
          cls = parse_class(lhs, L.rank());
        } else {
          throw precondition_error("unknown class name '" + lhs + "'");
        }
        if (cls.size() != L.rank()) throw precondition_error("class '" + lhs + "' has the wrong rank");
        constraints.push_back({cls, value});
      }
      RationalVector x = dual_solve(L, constraints);
      Rescaled r = primitive_rescale(x);
      Json doc = Json::object();
      doc["vector"] = io::to_json(x);
      doc["primitive"] = io::to_json(r.primitive);
      doc["scale"] = io::to_json(r.scale);
      emit(doc, "");
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const precondition_error& e) {
    std::cerr << "hkcone: " << e.what() << '\n';
    return 2;
  } catch (const io_error& e) {
    std::cerr << "hkcone: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "hkcone: internal error: " << e.what() << '\n';
    return 3;
  }
}
