#pragma once

// JSON documents: lattices, signature tables, named classes, cone points,
// matrices and the factor_path report. Rationals travel as lowest-terms
// "p/q" strings, integers as JSON integers.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkcone/cone.hpp"
#include "hkcone/lattice.hpp"
#include "hkcone/mbm.hpp"

namespace hkcone::io {

using Json = nlohmann::ordered_json;

// Throws io_error when the file is missing or not valid JSON.
Json load_json_file(const std::filesystem::path& path);

// {"basis_names": [...], "gram": [[...]], optional "ambient_pairing_ideal": [m_i]
//  or "ambient_functionals": [[...]]}. Malformed documents raise io_error,
// mathematically invalid ones precondition_error.
IntegralLattice lattice_from_json(const Json& doc);
IntegralLattice load_lattice(const std::filesystem::path& path);
Json to_json(const IntegralLattice& L);

// {"orbits": [{"name", "square", "divisibility", "codimension", optional "disc_residue"}]}
SignatureTable table_from_json(const Json& doc);
SignatureTable load_table(const std::filesystem::path& path);
Json to_json(const SignatureTable& table);

using NamedClasses = std::vector<std::pair<std::string, LatticeClass>>;
// {"classes": {"delta": [0,0,1], ...}} in document order.
NamedClasses named_classes_from_json(const Json& doc);
NamedClasses load_named_classes(const std::filesystem::path& path);

// {"point": [...]} (optionally with "name") or a bare array; entries are
// JSON integers or rational strings.
RationalVector point_from_json(const Json& doc);
RationalVector load_point(const std::filesystem::path& path);

// Rectangular array of integers / rational strings.
RatMatrix matrix_from_json(const Json& doc);
RatMatrix load_matrix(const std::filesystem::path& path);

Integer integer_from_json(const Json& v);
Rational rational_from_json(const Json& v);

Json to_json(const Integer& v);
Json to_json(const Rational& v);
Json to_json(const LatticeClass& x);
Json to_json(const RationalVector& x);
Json to_json(const RatVector& x);
Json to_json(const RatMatrix& m);
Json to_json(const OrbitSignature& sig);

Json factor_report(const FlopFactorization& f);
// Inverse of factor_report, used for round-trip checks and `render-cone --path`.
FlopFactorization factor_report_from_json(const IntegralLattice& L, const Json& doc);

// Compact single-line dump with a trailing newline.
std::string dump(const Json& doc);

}  // namespace hkcone::io
