#pragma once

// Table-driven recognition of MBM classes by orbit invariants, and recovery of
// a class from prescribed intersection numbers.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hkcone/lattice.hpp"

namespace hkcone {

struct OrbitSignature {
  std::string name;
  Integer square;
  Integer divisibility;
  std::optional<Residue> disc_residue;  // sign-normalized when present
  int codimension = 1;

  friend bool operator==(const OrbitSignature&, const OrbitSignature&) = default;
};

int codimension_of(const OrbitSignature& sig);
bool is_divisorial(const OrbitSignature& sig);

class SignatureTable {
 public:
  // Rejects malformed rows and any two rows that could match the same class.
  explicit SignatureTable(std::vector<OrbitSignature> orbits);

  const std::vector<OrbitSignature>& orbits() const { return orbits_; }
  bool empty() const { return orbits_.empty(); }
  bool uses_residues() const;
  // Distinct squares occurring in the table, ascending.
  std::vector<Integer> squares() const;

  // Row matching the invariants; `residue` is consulted only by rows that carry one.
  const OrbitSignature* find(const Integer& square, const Integer& divisibility,
                             const std::optional<Residue>& residue) const;

  SignatureTable restricted_to(std::span<const std::string> names) const;

 private:
  std::vector<OrbitSignature> orbits_;
};

// Precomputes the discriminant group once for repeated classification.
class Classifier {
 public:
  Classifier(const IntegralLattice& L, const SignatureTable& table);

  // Requires x primitive with q(x) < 0.
  std::optional<OrbitSignature> classify(const LatticeClass& x) const;
  // Same lookup with q(x) already known; x is assumed primitive.
  const OrbitSignature* lookup(const LatticeClass& x, const Integer& square) const;

  const IntegralLattice& lattice() const { return *lattice_; }
  const SignatureTable& table() const { return *table_; }

 private:
  const IntegralLattice* lattice_;
  const SignatureTable* table_;
  std::optional<DiscriminantGroup> group_;
};

std::optional<OrbitSignature> classify(const IntegralLattice& L, const SignatureTable& table, const LatticeClass& x);

struct PairingConstraint {
  LatticeClass cls;
  Rational value;
};

// The unique x with q(x, c_i) = v_i for all constraints.
RationalVector dual_solve(const IntegralLattice& L, std::span<const PairingConstraint> constraints);

struct Rescaled {
  LatticeClass primitive;
  Rational scale;  // primitive = scale * x, scale > 0
};

Rescaled primitive_rescale(const RationalVector& x);

}  // namespace hkcone
