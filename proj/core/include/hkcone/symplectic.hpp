#pragma once

// Symplectic rank of a subspace: the rank of the ambient form restricted to it.

#include <optional>
#include <string>

#include "hkcone/matrix.hpp"

namespace hkcone::symplectic {

class SymplecticSpace {
 public:
  // omega must be antisymmetric and nondegenerate (so the dimension is even).
  explicit SymplecticSpace(RatMatrix omega);

  // Standard form J = [[0, I], [-I, 0]] on Q^{2n}, basis (e_1..e_n, f_1..f_n).
  static SymplecticSpace standard(std::size_t n);

  std::size_t dim() const { return omega_.rows(); }
  const RatMatrix& omega() const { return omega_; }

 private:
  RatMatrix omega_;
};

class Subspace {
 public:
  // Rejects linearly dependent bases.
  explicit Subspace(std::vector<RatVector> basis);

  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient_dim() const { return basis_.empty() ? 0 : basis_.front().size(); }
  const std::vector<RatVector>& basis() const { return basis_; }
  // Basis vectors as columns.
  RatMatrix matrix(std::size_t ambient) const;

 private:
  std::vector<RatVector> basis_;
};

std::size_t restriction_rank(const SymplecticSpace& s, const Subspace& w);
bool is_isotropic(const SymplecticSpace& s, const Subspace& w);
// W contains its omega-orthogonal complement.
bool is_coisotropic(const SymplecticSpace& s, const Subspace& w);
// Basis of W^omega = {v : omega(v, w) = 0 for all w in W}.
std::vector<RatVector> orthogonal_complement(const SymplecticSpace& s, const Subspace& w);

// Rank of f^T omega f for a linear map f: U -> V_S given by a (dim S) x (dim U) matrix.
std::size_t pullback_rank(const SymplecticSpace& s, const RatMatrix& f);

struct IdentityCheck {
  bool holds = false;
  std::optional<std::string> precondition_failure;
};

// rank(omega|W) = dim S - 2 c, given that ker(omega|W) has dimension c.
IdentityCheck mbm_rank_identity(const SymplecticSpace& s, const Subspace& w, std::size_t ambient_codim);

}  // namespace hkcone::symplectic
