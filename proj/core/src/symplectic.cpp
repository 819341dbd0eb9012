#include "hkcone/symplectic.hpp"

namespace hkcone::symplectic {
namespace {

void require_ambient(const SymplecticSpace& s, const Subspace& w) {
  if (w.dim() > 0 && w.ambient_dim() != s.dim())
    throw precondition_error("subspace vectors do not live in the symplectic space");
}

RatMatrix restricted_form(const SymplecticSpace& s, const Subspace& w) {
  RatMatrix b = w.matrix(s.dim());
  return b.transposed() * s.omega() * b;
}

}  // namespace

SymplecticSpace::SymplecticSpace(RatMatrix omega) : omega_(std::move(omega)) {
  if (omega_.rows() == 0 || omega_.rows() != omega_.cols()) throw precondition_error("omega must be a nonempty square matrix");
  if (omega_.transposed() != -omega_) throw precondition_error("omega must be antisymmetric");
  if (determinant(omega_) == 0) throw precondition_error("omega must be nondegenerate");
}

SymplecticSpace SymplecticSpace::standard(std::size_t n) {
  RatMatrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  return SymplecticSpace(std::move(j));
}

Subspace::Subspace(std::vector<RatVector> basis) : basis_(std::move(basis)) {
  if (basis_.empty()) return;
  for (const auto& v : basis_)
    if (v.size() != basis_.front().size()) throw precondition_error("subspace basis vectors differ in length");
  if (rank(RatMatrix::from_rows(basis_)) != basis_.size()) throw precondition_error("subspace basis is linearly dependent");
}

RatMatrix Subspace::matrix(std::size_t ambient) const {
  if (basis_.empty()) return RatMatrix(ambient, 0);
  return RatMatrix::from_columns(basis_);
}

std::size_t restriction_rank(const SymplecticSpace& s, const Subspace& w) {
  require_ambient(s, w);
  if (w.dim() == 0) return 0;
  return rank(restricted_form(s, w));
}

bool is_isotropic(const SymplecticSpace& s, const Subspace& w) { return restriction_rank(s, w) == 0; }

std::vector<RatVector> orthogonal_complement(const SymplecticSpace& s, const Subspace& w) {
  require_ambient(s, w);
  if (w.dim() == 0) {
    std::vector<RatVector> all;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      RatVector e(s.dim());
      e[i] = 1;
      all.push_back(std::move(e));
    }
    return all;
  }
  // v in W^omega  <=>  b^T omega v = 0.
  return nullspace(w.matrix(s.dim()).transposed() * s.omega());
}

bool is_coisotropic(const SymplecticSpace& s, const Subspace& w) {
  auto perp = orthogonal_complement(s, w);
  if (perp.empty()) return true;
  std::vector<RatVector> rows = w.basis();
  rows.insert(rows.end(), perp.begin(), perp.end());
  return rank(RatMatrix::from_rows(rows)) == w.dim();
}

std::size_t pullback_rank(const SymplecticSpace& s, const RatMatrix& f) {
  if (f.rows() != s.dim()) throw precondition_error("map does not land in the symplectic space");
  if (f.cols() == 0) return 0;
  return rank(f.transposed() * s.omega() * f);
}

IdentityCheck mbm_rank_identity(const SymplecticSpace& s, const Subspace& w, std::size_t ambient_codim) {
  std::size_t r = restriction_rank(s, w);
  std::size_t kernel = w.dim() - r;
  if (kernel != ambient_codim) {
    return {false, "kernel of the restricted form has dimension " + std::to_string(kernel) +
                       ", expected the codimension " + std::to_string(ambient_codim)};
  }
  if (2 * ambient_codim > s.dim()) return {false, "codimension exceeds half the dimension"};
  return {r == s.dim() - 2 * ambient_codim, std::nullopt};
}

}  // namespace hkcone::symplectic
