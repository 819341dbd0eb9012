#pragma once

// Integral lattices carrying a symmetric bilinear form (the BBF pairing on a
// Picard lattice), with exact pairing, divisibility, discriminant group,
// inertia and congruence diagonalization.

#include <optional>
#include <string>
#include <vector>

#include "hkcone/arith.hpp"
#include "hkcone/matrix.hpp"

namespace hkcone {

// Integral class given by coordinates in the lattice basis.
struct LatticeClass {
  IntVector coords;

  LatticeClass() = default;
  explicit LatticeClass(IntVector c) : coords(std::move(c)) {}
  LatticeClass(std::initializer_list<long> c) : coords(c.begin(), c.end()) {}

  std::size_t size() const { return coords.size(); }
  bool is_zero() const;
  LatticeClass operator-() const;

  friend bool operator==(const LatticeClass&, const LatticeClass&) = default;
  // Lexicographic on coordinates.
  friend bool operator<(const LatticeClass& a, const LatticeClass& b);
};

// Rational point of L (x) Q: cone points, dual-lattice elements x/d(x).
struct RationalVector {
  RatVector coords;

  RationalVector() = default;
  explicit RationalVector(RatVector c) : coords(std::move(c)) {}
  explicit RationalVector(const LatticeClass& x) : coords(to_rational(x.coords)) {}

  std::size_t size() const { return coords.size(); }
  bool is_zero() const;

  friend bool operator==(const RationalVector&, const RationalVector&) = default;
  friend RationalVector operator+(const RationalVector& a, const RationalVector& b);
  friend RationalVector operator-(const RationalVector& a, const RationalVector& b);
  friend RationalVector operator*(const Rational& s, const RationalVector& v);
};

class IntegralLattice {
 public:
  // `ambient_functionals`, when given, lists integer covectors (rows) that
  // generate the image of the ambient lattice in Hom(L, Z); divisibility and
  // the discriminant group are then taken relative to the ambient lattice.
  // Otherwise the rows of the Gram matrix are used (L-relative).
  explicit IntegralLattice(IntMatrix gram, std::vector<std::string> basis_names = {},
                           std::optional<IntMatrix> ambient_functionals = std::nullopt);

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  bool has_ambient() const { return ambient_.has_value(); }
  const std::optional<IntMatrix>& ambient_functionals() const { return ambient_; }
  const IntMatrix& pairing_functionals() const { return ambient_ ? *ambient_ : gram_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  // Per-basis-vector ambient ideal m_i: functionals m_i * e_i^*.
  static IntMatrix diagonal_functionals(const IntVector& ideal);

 private:
  IntMatrix gram_;
  std::vector<std::string> basis_names_;
  std::optional<IntMatrix> ambient_;
};

Integer pairing(const IntegralLattice& L, const LatticeClass& x, const LatticeClass& y);
Rational pairing(const IntegralLattice& L, const RationalVector& x, const RationalVector& y);
Rational pairing(const IntegralLattice& L, const LatticeClass& x, const RationalVector& y);
Rational pairing(const IntegralLattice& L, const RationalVector& x, const LatticeClass& y);
Integer square(const IntegralLattice& L, const LatticeClass& x);
Rational square(const IntegralLattice& L, const RationalVector& x);

// Positive generator of the ideal q(x, L) (or of the ambient pairing ideal).
Integer divisibility(const IntegralLattice& L, const LatticeClass& x);

bool is_primitive(const LatticeClass& x);
// Divides by the content and makes the first nonzero coordinate positive.
LatticeClass primitive_part(const LatticeClass& x);
LatticeClass canonical_sign(const LatticeClass& x);

// Dual lattice modulo the lattice, as a product of cyclic groups.
struct DiscriminantGroup {
  IntVector invariant_factors;  // d_1 | d_2 | ..., each > 1
  // Row i maps a dual vector v to the i-th residue: (d_i * transform_i . v) mod d_i.
  RatMatrix transform;

  Integer order() const;
  bool is_trivial() const { return invariant_factors.empty(); }
};

using Residue = IntVector;

DiscriminantGroup discriminant_group(const IntegralLattice& L);

// Residue of x/d(x), canonicalized so that r and -r give the same value
// (the lexicographically smaller of the two).
Residue discriminant_image(const IntegralLattice& L, const LatticeClass& x);
Residue discriminant_image(const IntegralLattice& L, const DiscriminantGroup& group,
                           const LatticeClass& x);
// Residue of an arbitrary dual-lattice vector, not sign-normalized.
Residue residue_of(const DiscriminantGroup& group, const RationalVector& dual_vector);
Residue normalize_sign(const DiscriminantGroup& group, Residue r);
// Order of a residue in the group (1 for the zero residue).
Integer residue_order(const DiscriminantGroup& group, const Residue& r);

struct Inertia {
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  std::size_t n_zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

Inertia signature(const IntegralLattice& L);
Inertia inertia_of(std::span<const Rational> diagonal);
// True for signature (1, rank - 1).
bool is_hyperbolic(const IntegralLattice& L);

struct Diagonalization {
  RatMatrix transform;  // columns form the new basis: T^T G T = diag
  RatVector diagonal;
};

// Lagrange congruence diagonalization; requires det(gram) != 0.
Diagonalization diagonalize(const IntegralLattice& L);
// Same reduction on an arbitrary symmetric rational matrix (may be degenerate).
Diagonalization congruence_diagonalize(const RatMatrix& symmetric);

}  // namespace hkcone
