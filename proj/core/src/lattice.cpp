#include "hkcone/lattice.hpp"

#include <algorithm>

namespace hkcone {
namespace {

void require_rank(const IntegralLattice& L, std::size_t n) {
  if (n != L.rank()) {
    throw precondition_error("vector of length " + std::to_string(n) + " does not match lattice rank " +
                             std::to_string(L.rank()));
  }
}

// R * P * C = diag(d_0, d_1, ...), with R, C unimodular; only C is tracked.
struct SmithForm {
  IntVector diagonal;  // min(rows, cols) entries, nonnegative, divisibility chain
  IntMatrix column_transform;
};

SmithForm smith_form(IntMatrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  IntMatrix c = IntMatrix::identity(cols);
  const std::size_t n = std::min(rows, cols);

  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < cols; ++j) a(dst, j) -= f * a(src, j);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < rows; ++i) a(i, dst) -= f * a(i, src);
    for (std::size_t i = 0; i < cols; ++i) c(i, dst) -= f * c(i, src);
  };

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Pivot: minimal nonzero |entry|; ties go to the smallest row, then column.
      bool found = false;
      std::size_t pr = t, pc = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          Integer v = abs(a(i, j));
          if (!found || v < best) {
            found = true;
            best = v;
            pr = i;
            pc = j;
          }
        }
      if (!found) break;
      a.swap_rows(t, pr);
      a.swap_columns(t, pc);
      c.swap_columns(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer f;
        mpz_tdiv_q(f.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        add_row(i, t, f);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer f;
        mpz_tdiv_q(f.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        add_col(j, t, f);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility chain: fold an offending row into the pivot row.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            add_row(t, i, Integer(-1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
  }

  SmithForm out;
  out.diagonal.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    out.diagonal[t] = abs(a(t, t));
  }
  out.column_transform = std::move(c);
  return out;
}

}  // namespace

// ---- classes and vectors ----

bool LatticeClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Integer& v) { return v == 0; });
}

LatticeClass LatticeClass::operator-() const {
  LatticeClass out = *this;
  for (auto& v : out.coords) v = -v;
  return out;
}

bool operator<(const LatticeClass& a, const LatticeClass& b) {
  return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
}

bool RationalVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& v) { return v == 0; });
}

RationalVector operator+(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw precondition_error("vector sum dimension mismatch");
  RationalVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

RationalVector operator-(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw precondition_error("vector difference dimension mismatch");
  RationalVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.coords[i] -= b.coords[i];
  return out;
}

RationalVector operator*(const Rational& s, const RationalVector& v) {
  RationalVector out = v;
  for (auto& c : out.coords) c *= s;
  return out;
}

// ---- lattice ----

IntegralLattice::IntegralLattice(IntMatrix gram, std::vector<std::string> basis_names,
                                 std::optional<IntMatrix> ambient_functionals)
    : gram_(std::move(gram)), basis_names_(std::move(basis_names)), ambient_(std::move(ambient_functionals)) {
  if (gram_.rows() == 0) throw precondition_error("lattice rank must be at least 1");
  if (!gram_.is_symmetric()) throw precondition_error("Gram matrix must be square and symmetric");
  if (basis_names_.empty()) {
    for (std::size_t i = 0; i < gram_.rows(); ++i) basis_names_.push_back("e" + std::to_string(i));
  }
  if (basis_names_.size() != gram_.rows()) throw precondition_error("basis_names length does not match rank");
  for (std::size_t i = 0; i < basis_names_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_names_.size(); ++j)
      if (basis_names_[i] == basis_names_[j]) throw precondition_error("duplicate basis name " + basis_names_[i]);

  if (ambient_) {
    if (ambient_->cols() != rank()) throw precondition_error("ambient functionals must have one column per basis vector");
    SmithForm s = smith_form(*ambient_);
    for (std::size_t i = 0; i < s.diagonal.size(); ++i)
      if (s.diagonal[i] == 0 || s.diagonal.size() < rank())
        throw precondition_error("ambient functionals must have full rank");
    // The lattice embeds in the ambient one, so each Gram row is an ambient pairing.
    for (std::size_t r = 0; r < rank(); ++r) {
      IntVector g = gram_.row(r);
      IntVector gc(rank());
      for (std::size_t j = 0; j < rank(); ++j)
        for (std::size_t k = 0; k < rank(); ++k) gc[j] += g[k] * s.column_transform(k, j);
      for (std::size_t j = 0; j < rank(); ++j)
        if (gc[j] % s.diagonal[j] != 0)
          throw precondition_error("Gram row " + std::to_string(r) +
                                   " is not in the span of the ambient functionals");
    }
  }
}

std::optional<std::size_t> IntegralLattice::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < basis_names_.size(); ++i)
    if (basis_names_[i] == name) return i;
  return std::nullopt;
}

IntMatrix IntegralLattice::diagonal_functionals(const IntVector& ideal) {
  IntMatrix m(ideal.size(), ideal.size());
  for (std::size_t i = 0; i < ideal.size(); ++i) m(i, i) = ideal[i];
  return m;
}

Integer pairing(const IntegralLattice& L, const LatticeClass& x, const LatticeClass& y) {
  require_rank(L, x.size());
  require_rank(L, y.size());
  Integer s = 0;
  const auto& g = L.gram();
  for (std::size_t i = 0; i < L.rank(); ++i) {
    if (x.coords[i] == 0) continue;
    for (std::size_t j = 0; j < L.rank(); ++j) s += x.coords[i] * g(i, j) * y.coords[j];
  }
  return s;
}

Rational pairing(const IntegralLattice& L, const RationalVector& x, const RationalVector& y) {
  require_rank(L, x.size());
  require_rank(L, y.size());
  Rational s = 0;
  const auto& g = L.gram();
  for (std::size_t i = 0; i < L.rank(); ++i) {
    if (x.coords[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < L.rank(); ++j) row += g(i, j) * y.coords[j];
    s += x.coords[i] * row;
  }
  return s;
}

Rational pairing(const IntegralLattice& L, const LatticeClass& x, const RationalVector& y) {
  return pairing(L, RationalVector(x), y);
}

Rational pairing(const IntegralLattice& L, const RationalVector& x, const LatticeClass& y) {
  return pairing(L, x, RationalVector(y));
}

Integer square(const IntegralLattice& L, const LatticeClass& x) { return pairing(L, x, x); }
Rational square(const IntegralLattice& L, const RationalVector& x) { return pairing(L, x, x); }

Integer divisibility(const IntegralLattice& L, const LatticeClass& x) {
  require_rank(L, x.size());
  if (x.is_zero()) throw precondition_error("divisibility of the zero class");
  IntVector values = L.pairing_functionals() * std::span<const Integer>(x.coords);
  return content(values);
}

bool is_primitive(const LatticeClass& x) {
  if (x.is_zero()) throw precondition_error("primitivity of the zero class");
  return content(x.coords) == 1;
}

LatticeClass primitive_part(const LatticeClass& x) {
  if (x.is_zero()) throw precondition_error("primitive part of the zero class");
  Integer g = content(x.coords);
  LatticeClass out = x;
  for (auto& c : out.coords) c /= g;
  return canonical_sign(out);
}

LatticeClass canonical_sign(const LatticeClass& x) {
  for (const auto& c : x.coords) {
    if (c == 0) continue;
    return c > 0 ? x : -x;
  }
  return x;
}

// ---- discriminant group ----

Integer DiscriminantGroup::order() const {
  Integer o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

DiscriminantGroup discriminant_group(const IntegralLattice& L) {
  if (determinant(to_rational(L.gram())) == 0) throw precondition_error("degenerate lattice (det = 0)");
  SmithForm s = smith_form(L.pairing_functionals());
  auto v = inverse(to_rational(s.column_transform));
  DiscriminantGroup g;
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
    if (s.diagonal[i] == 1) continue;
    g.invariant_factors.push_back(s.diagonal[i]);
    rows.push_back(v->row(i));
  }
  g.transform = rows.empty() ? RatMatrix(0, L.rank()) : RatMatrix::from_rows(rows);
  return g;
}

Residue residue_of(const DiscriminantGroup& group, const RationalVector& dual_vector) {
  Residue r(group.invariant_factors.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    Rational w = 0;
    for (std::size_t j = 0; j < dual_vector.size(); ++j) w += group.transform(i, j) * dual_vector.coords[j];
    w *= group.invariant_factors[i];
    if (w.get_den() != 1) throw precondition_error("vector is not in the dual lattice");
    Integer m = w.get_num() % group.invariant_factors[i];
    if (m < 0) m += group.invariant_factors[i];
    r[i] = m;
  }
  return r;
}

Residue normalize_sign(const DiscriminantGroup& group, Residue r) {
  Residue neg(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    neg[i] = r[i] == 0 ? Integer(0) : Integer(group.invariant_factors[i] - r[i]);
  }
  return std::lexicographical_compare(neg.begin(), neg.end(), r.begin(), r.end()) ? neg : r;
}

Integer residue_order(const DiscriminantGroup& group, const Residue& r) {
  Integer order = 1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Integer& d = group.invariant_factors[i];
    order = lcm(order, d / gcd(d, r[i]));
  }
  return order;
}

Residue discriminant_image(const IntegralLattice& L, const DiscriminantGroup& group, const LatticeClass& x) {
  require_rank(L, x.size());
  if (!is_primitive(x)) throw precondition_error("discriminant image requires a primitive class");
  Integer d = divisibility(L, x);
  RationalVector v(x);
  for (auto& c : v.coords) c /= d;
  return normalize_sign(group, residue_of(group, v));
}

Residue discriminant_image(const IntegralLattice& L, const LatticeClass& x) {
  return discriminant_image(L, discriminant_group(L), x);
}

// ---- inertia and diagonalization ----

Inertia inertia_of(std::span<const Rational> diagonal) {
  Inertia in;
  for (const auto& d : diagonal) {
    if (d > 0) ++in.n_plus;
    else if (d < 0) ++in.n_minus;
    else ++in.n_zero;
  }
  return in;
}

Diagonalization congruence_diagonalize(const RatMatrix& symmetric) {
  if (!symmetric.is_symmetric()) throw precondition_error("congruence diagonalization needs a symmetric matrix");
  const std::size_t n = symmetric.rows();
  RatMatrix t = RatMatrix::identity(n);
  RatMatrix g = symmetric;

  // g always equals t^T * symmetric * t; basis changes act on columns of t.
  auto recompute = [&] { g = t.transposed() * symmetric * t; };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i)
      if (g(i, i) != 0) {
        pivot = i;
        break;
      }
    if (pivot == n) {
      // Hyperbolic split: b_i <- b_i + b_j makes the diagonal entry 2 g_ij.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (g(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;  // remaining block is zero
      for (std::size_t r = 0; r < n; ++r) t(r, pi) += t(r, pj);
      recompute();
      pivot = pi;
    }
    t.swap_columns(k, pivot);
    recompute();
    for (std::size_t j = k + 1; j < n; ++j) {
      if (g(k, j) == 0) continue;
      Rational f = g(k, j) / g(k, k);
      for (std::size_t r = 0; r < n; ++r) t(r, j) -= f * t(r, k);
    }
    recompute();
  }

  Diagonalization out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = g(i, i);
  out.transform = std::move(t);
  return out;
}

Inertia signature(const IntegralLattice& L) {
  return inertia_of(congruence_diagonalize(to_rational(L.gram())).diagonal);
}

bool is_hyperbolic(const IntegralLattice& L) {
  Inertia in = signature(L);
  return in.n_plus == 1 && in.n_zero == 0;
}

Diagonalization diagonalize(const IntegralLattice& L) {
  if (determinant(to_rational(L.gram())) == 0) throw precondition_error("degenerate lattice (det = 0)");
  Diagonalization d = congruence_diagonalize(to_rational(L.gram()));
  Inertia in = inertia_of(d.diagonal);
  if (in.n_plus == 1) {
    std::size_t pos = 0;
    while (d.diagonal[pos] <= 0) ++pos;
    // Rotate the positive entry to the front, keeping the others in order.
    for (std::size_t k = pos; k > 0; --k) {
      std::swap(d.diagonal[k], d.diagonal[k - 1]);
      d.transform.swap_columns(k, k - 1);
    }
  }
  return d;
}

}  // namespace hkcone
