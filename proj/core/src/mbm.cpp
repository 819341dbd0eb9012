#include "hkcone/mbm.hpp"

#include <algorithm>
#include <set>

namespace hkcone {

int codimension_of(const OrbitSignature& sig) { return sig.codimension; }
bool is_divisorial(const OrbitSignature& sig) { return sig.codimension == 1; }

SignatureTable::SignatureTable(std::vector<OrbitSignature> orbits) : orbits_(std::move(orbits)) {
  std::set<std::string> names;
  for (const auto& row : orbits_) {
    if (row.name.empty()) throw precondition_error("orbit signature without a name");
    if (!names.insert(row.name).second) throw precondition_error("duplicate orbit name '" + row.name + "'");
    if (row.square >= 0) throw precondition_error("orbit '" + row.name + "' must have negative square");
    if (row.divisibility <= 0) throw precondition_error("orbit '" + row.name + "' must have positive divisibility");
    if (row.codimension < 1) throw precondition_error("orbit '" + row.name + "' must have codimension >= 1");
  }
  for (std::size_t i = 0; i < orbits_.size(); ++i)
    for (std::size_t j = i + 1; j < orbits_.size(); ++j) {
      const auto& a = orbits_[i];
      const auto& b = orbits_[j];
      if (a.square != b.square || a.divisibility != b.divisibility) continue;
      if (a.disc_residue && b.disc_residue && *a.disc_residue != *b.disc_residue) continue;
      throw precondition_error("orbit signatures '" + a.name + "' and '" + b.name + "' collide");
    }
}

bool SignatureTable::uses_residues() const {
  return std::any_of(orbits_.begin(), orbits_.end(), [](const auto& r) { return r.disc_residue.has_value(); });
}

std::vector<Integer> SignatureTable::squares() const {
  std::vector<Integer> out;
  for (const auto& r : orbits_) out.push_back(r.square);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const OrbitSignature* SignatureTable::find(const Integer& square, const Integer& divisibility,
                                           const std::optional<Residue>& residue) const {
  for (const auto& row : orbits_) {
    if (row.square != square || row.divisibility != divisibility) continue;
    if (row.disc_residue && (!residue || *row.disc_residue != *residue)) continue;
    return &row;
  }
  return nullptr;
}

SignatureTable SignatureTable::restricted_to(std::span<const std::string> names) const {
  std::vector<OrbitSignature> rows;
  for (const auto& row : orbits_)
    if (std::find(names.begin(), names.end(), row.name) != names.end()) rows.push_back(row);
  return SignatureTable(std::move(rows));
}

Classifier::Classifier(const IntegralLattice& L, const SignatureTable& table) : lattice_(&L), table_(&table) {
  if (table.uses_residues()) group_ = discriminant_group(L);
}

const OrbitSignature* Classifier::lookup(const LatticeClass& x, const Integer& sq) const {
  Integer d = divisibility(*lattice_, x);
  std::optional<Residue> residue;
  for (const auto& row : table_->orbits()) {
    if (row.square != sq || row.divisibility != d) continue;
    if (!row.disc_residue) return &row;
    // Residues are computed lazily, only when a candidate row carries one.
    if (!residue) residue = discriminant_image(*lattice_, *group_, x);
    if (row.disc_residue->size() != residue->size()) {
      throw precondition_error("orbit '" + row.name + "' residue does not match the discriminant group");
    }
    if (normalize_sign(*group_, *row.disc_residue) == *residue) return &row;
  }
  return nullptr;
}

std::optional<OrbitSignature> Classifier::classify(const LatticeClass& x) const {
  if (x.size() != lattice_->rank()) throw precondition_error("class length does not match lattice rank");
  if (!is_primitive(x)) throw precondition_error("classify requires a primitive class");
  Integer sq = square(*lattice_, x);
  if (sq >= 0) throw precondition_error("classify requires q(x) < 0, got q(x) = " + to_string(sq));
  const OrbitSignature* row = lookup(x, sq);
  if (!row) return std::nullopt;
  return *row;
}

std::optional<OrbitSignature> classify(const IntegralLattice& L, const SignatureTable& table, const LatticeClass& x) {
  return Classifier(L, table).classify(x);
}

RationalVector dual_solve(const IntegralLattice& L, std::span<const PairingConstraint> constraints) {
  RatMatrix m(constraints.size(), L.rank());
  RatVector rhs;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    if (c.cls.size() != L.rank()) throw precondition_error("constraint class length does not match lattice rank");
    for (std::size_t j = 0; j < L.rank(); ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < L.rank(); ++k) s += c.cls.coords[k] * L.gram()(k, j);
      m(i, j) = s;
    }
    rhs.push_back(c.value);
  }
  Solution sol = solve(m, rhs);
  switch (sol.status) {
    case SolveStatus::unique:
      return RationalVector(std::move(sol.x));
    case SolveStatus::underdetermined:
      throw precondition_error("constraint classes do not span the lattice");
    case SolveStatus::inconsistent:
      break;
  }
  throw precondition_error("inconsistent intersection constraints");
}

Rescaled primitive_rescale(const RationalVector& x) {
  if (x.is_zero()) throw precondition_error("primitive_rescale of the zero vector");
  Integer den = 1;
  for (const auto& c : x.coords) den = lcm(den, c.get_den());
  IntVector scaled;
  for (const auto& c : x.coords) scaled.push_back(Integer(c.get_num() * (den / c.get_den())));
  Integer g = content(scaled);
  for (auto& v : scaled) v /= g;
  Rational scale(den, g);
  scale.canonicalize();
  return {LatticeClass(std::move(scaled)), scale};
}

}  // namespace hkcone
