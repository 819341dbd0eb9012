#include "hkcone/io.hpp"

#include <fstream>
#include <limits>

namespace hkcone::io {
namespace {

[[noreturn]] void malformed(const std::string& what) { throw io_error("malformed document: " + what); }

const Json& member(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) malformed(std::string("missing \"") + key + "\"");
  return doc.at(key);
}

IntMatrix int_matrix_from_json(const Json& doc, const char* what) {
  if (!doc.is_array() || doc.empty()) malformed(std::string(what) + " must be a nonempty array of rows");
  std::vector<IntVector> rows;
  for (const auto& row : doc) {
    if (!row.is_array()) malformed(std::string(what) + " rows must be arrays");
    IntVector r;
    for (const auto& v : row) r.push_back(integer_from_json(v));
    if (!rows.empty() && r.size() != rows.front().size()) malformed(std::string(what) + " is not rectangular");
    rows.push_back(std::move(r));
  }
  return IntMatrix::from_rows(rows);
}

PathStatus status_from_string(const std::string& s) {
  if (s == "ok") return PathStatus::ok;
  if (s == "leaves_birational_cone") return PathStatus::leaves_birational_cone;
  if (s == "regular_in_codim_two") return PathStatus::regular_in_codim_two;
  malformed("unknown status \"" + s + "\"");
}

}  // namespace

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw io_error("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

Integer integer_from_json(const Json& v) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(std::to_string(v.get<std::uint64_t>()));
    return Integer(std::to_string(v.get<std::int64_t>()));
  }
  malformed("expected a JSON integer, got " + v.dump());
}

Rational rational_from_json(const Json& v) {
  if (v.is_number_integer()) return Rational(integer_from_json(v));
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const io_error& e) {
      malformed(e.what());
    }
  }
  malformed("expected an integer or a \"p/q\" string, got " + v.dump());
}

IntegralLattice lattice_from_json(const Json& doc) {
  IntMatrix gram = int_matrix_from_json(member(doc, "gram"), "gram");
  std::vector<std::string> names;
  if (doc.contains("basis_names")) {
    const auto& n = doc.at("basis_names");
    if (!n.is_array()) malformed("basis_names must be an array");
    for (const auto& s : n) {
      if (!s.is_string()) malformed("basis_names entries must be strings");
      names.push_back(s.get<std::string>());
    }
    if (names.size() != gram.rows()) malformed("basis_names length does not match the Gram matrix");
  }
  std::optional<IntMatrix> ambient;
  if (doc.contains("ambient_pairing_ideal") && doc.contains("ambient_functionals"))
    malformed("give at most one of ambient_pairing_ideal and ambient_functionals");
  if (doc.contains("ambient_pairing_ideal")) {
    const auto& ideal = doc.at("ambient_pairing_ideal");
    if (!ideal.is_array()) malformed("ambient_pairing_ideal must be an array");
    IntVector m;
    for (const auto& v : ideal) m.push_back(integer_from_json(v));
    if (m.size() != gram.rows()) malformed("ambient_pairing_ideal length does not match the Gram matrix");
    ambient = IntegralLattice::diagonal_functionals(m);
  } else if (doc.contains("ambient_functionals")) {
    ambient = int_matrix_from_json(doc.at("ambient_functionals"), "ambient_functionals");
  }
  return IntegralLattice(std::move(gram), std::move(names), std::move(ambient));
}

IntegralLattice load_lattice(const std::filesystem::path& path) { return lattice_from_json(load_json_file(path)); }

Json to_json(const IntegralLattice& L) {
  Json doc = Json::object();
  if (!L.basis_names().empty()) doc["basis_names"] = L.basis_names();
  Json gram = Json::array();
  for (std::size_t i = 0; i < L.rank(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < L.rank(); ++j) row.push_back(to_json(L.gram()(i, j)));
    gram.push_back(std::move(row));
  }
  doc["gram"] = std::move(gram);
  if (L.ambient_functionals()) {
    Json f = Json::array();
    const auto& m = *L.ambient_functionals();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
      f.push_back(std::move(row));
    }
    doc["ambient_functionals"] = std::move(f);
  }
  return doc;
}

SignatureTable table_from_json(const Json& doc) {
  const auto& rows = member(doc, "orbits");
  if (!rows.is_array()) malformed("orbits must be an array");
  std::vector<OrbitSignature> orbits;
  for (const auto& row : rows) {
    OrbitSignature sig;
    const auto& name = member(row, "name");
    if (!name.is_string()) malformed("orbit name must be a string");
    sig.name = name.get<std::string>();
    sig.square = integer_from_json(member(row, "square"));
    sig.divisibility = integer_from_json(member(row, "divisibility"));
    Integer codim = integer_from_json(member(row, "codimension"));
    if (!codim.fits_sint_p()) malformed("codimension out of range");
    sig.codimension = static_cast<int>(codim.get_si());
    if (row.contains("disc_residue")) {
      const auto& r = row.at("disc_residue");
      Residue res;
      if (r.is_array()) {
        for (const auto& v : r) res.push_back(integer_from_json(v));
      } else {
        res.push_back(integer_from_json(r));
      }
      sig.disc_residue = std::move(res);
    }
    orbits.push_back(std::move(sig));
  }
  return SignatureTable(std::move(orbits));
}

SignatureTable load_table(const std::filesystem::path& path) { return table_from_json(load_json_file(path)); }

Json to_json(const SignatureTable& table) {
  Json rows = Json::array();
  for (const auto& sig : table.orbits()) {
    Json row = Json::object();
    row["name"] = sig.name;
    row["square"] = to_json(sig.square);
    row["divisibility"] = to_json(sig.divisibility);
    row["codimension"] = sig.codimension;
    if (sig.disc_residue) {
      Json r = Json::array();
      for (const auto& v : *sig.disc_residue) r.push_back(to_json(v));
      row["disc_residue"] = std::move(r);
    }
    rows.push_back(std::move(row));
  }
  Json doc = Json::object();
  doc["orbits"] = std::move(rows);
  return doc;
}

NamedClasses named_classes_from_json(const Json& doc) {
  const auto& classes = member(doc, "classes");
  if (!classes.is_object()) malformed("classes must be an object");
  NamedClasses out;
  for (const auto& [name, coords] : classes.items()) {
    if (!coords.is_array()) malformed("class '" + name + "' must be an array");
    IntVector c;
    for (const auto& v : coords) c.push_back(integer_from_json(v));
    out.emplace_back(name, LatticeClass(std::move(c)));
  }
  return out;
}

NamedClasses load_named_classes(const std::filesystem::path& path) {
  return named_classes_from_json(load_json_file(path));
}

RationalVector point_from_json(const Json& doc) {
  const Json& arr = doc.is_array() ? doc : member(doc, "point");
  if (!arr.is_array() || arr.empty()) malformed("point must be a nonempty array");
  RatVector v;
  for (const auto& x : arr) v.push_back(rational_from_json(x));
  return RationalVector(std::move(v));
}

RationalVector load_point(const std::filesystem::path& path) { return point_from_json(load_json_file(path)); }

RatMatrix matrix_from_json(const Json& doc) {
  if (!doc.is_array()) malformed("matrix must be an array of rows");
  std::vector<RatVector> rows;
  for (const auto& row : doc) {
    if (!row.is_array()) malformed("matrix rows must be arrays");
    RatVector r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    if (!rows.empty() && r.size() != rows.front().size()) malformed("matrix is not rectangular");
    rows.push_back(std::move(r));
  }
  if (rows.empty()) return RatMatrix(0, 0);
  return RatMatrix::from_rows(rows);
}

RatMatrix load_matrix(const std::filesystem::path& path) { return matrix_from_json(load_json_file(path)); }

Json to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  // Out of int64 range: fall back to the decimal string.
  return Json(v.get_str());
}

Json to_json(const Rational& v) { return Json(to_string(v)); }

Json to_json(const LatticeClass& x) {
  Json a = Json::array();
  for (const auto& c : x.coords) a.push_back(to_json(c));
  return a;
}

Json to_json(const RatVector& x) {
  Json a = Json::array();
  for (const auto& c : x) a.push_back(to_json(c));
  return a;
}

Json to_json(const RationalVector& x) { return to_json(x.coords); }

Json to_json(const RatMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const OrbitSignature& sig) {
  Json doc = Json::object();
  doc["orbit"] = sig.name;
  doc["square"] = to_json(sig.square);
  doc["divisibility"] = to_json(sig.divisibility);
  doc["codimension"] = sig.codimension;
  return doc;
}

Json factor_report(const FlopFactorization& f) {
  Json doc = Json::object();
  doc["a"] = to_json(f.a.coords());
  doc["b"] = to_json(f.b.coords());
  doc["perturbed"] = f.perturbed;
  Json steps = Json::array();
  for (const auto& s : f.steps) {
    Json step = Json::object();
    step["class"] = to_json(s.wall_class);
    step["square"] = to_json(s.signature.square);
    step["divisibility"] = to_json(s.signature.divisibility);
    step["codimension"] = s.codimension;
    step["t"] = to_json(s.t);
    step["orbit"] = s.signature.name;
    steps.push_back(std::move(step));
  }
  doc["steps"] = std::move(steps);
  Json groups = Json::array();
  for (const auto& g : f.groups) groups.push_back(g);
  doc["groups"] = std::move(groups);
  doc["status"] = to_string(f.status);
  return doc;
}

FlopFactorization factor_report_from_json(const IntegralLattice& L, const Json& doc) {
  ConePoint a(L, point_from_json(member(doc, "a")));
  ConePoint b(L, point_from_json(member(doc, "b")));
  FlopFactorization f{a, b, false, {}, {}, PathStatus::ok};
  const auto& perturbed = member(doc, "perturbed");
  if (!perturbed.is_boolean()) malformed("perturbed must be a boolean");
  f.perturbed = perturbed.get<bool>();
  const auto& steps = member(doc, "steps");
  if (!steps.is_array()) malformed("steps must be an array");
  for (const auto& s : steps) {
    WallCrossing w;
    const auto& cls = member(s, "class");
    if (!cls.is_array()) malformed("step class must be an array");
    for (const auto& v : cls) w.wall_class.coords.push_back(integer_from_json(v));
    if (w.wall_class.size() != L.rank()) malformed("step class has the wrong length");
    w.t = rational_from_json(member(s, "t"));
    const auto& orbit = member(s, "orbit");
    if (!orbit.is_string()) malformed("step orbit must be a string");
    w.signature.name = orbit.get<std::string>();
    w.signature.square = integer_from_json(member(s, "square"));
    w.signature.divisibility = integer_from_json(member(s, "divisibility"));
    Integer codim = integer_from_json(member(s, "codimension"));
    if (!codim.fits_sint_p()) malformed("codimension out of range");
    w.codimension = w.signature.codimension = static_cast<int>(codim.get_si());
    f.steps.push_back(std::move(w));
  }
  const auto& groups = member(doc, "groups");
  if (!groups.is_array()) malformed("groups must be an array");
  for (const auto& g : groups) {
    if (!g.is_array()) malformed("group must be an array");
    std::vector<std::size_t> block;
    for (const auto& i : g) {
      if (!i.is_number_unsigned() && !(i.is_number_integer() && i.get<std::int64_t>() >= 0))
        malformed("group entries must be step indices");
      std::size_t idx = i.get<std::size_t>();
      if (idx >= f.steps.size()) malformed("group index out of range");
      block.push_back(idx);
    }
    f.groups.push_back(std::move(block));
  }
  const auto& status = member(doc, "status");
  if (!status.is_string()) malformed("status must be a string");
  f.status = status_from_string(status.get<std::string>());
  return f;
}

std::string dump(const Json& doc) { return doc.dump() + "\n"; }

}  // namespace hkcone::io
