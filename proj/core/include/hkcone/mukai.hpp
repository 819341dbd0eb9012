#pragma once

// Point-level model of the Mukai flop in codimension k. Points of
//   M = {([u], A) in P(V) x End(V) : im(A) in Cu, A^2 = 0},  dim V = k + 1,
// contract to square-zero endomorphisms of rank <= 1; the flop sends
// ([u], A) with A != 0 to ([ker A], A*) on the dual side. End(V) and End(V*)
// are identified by the transpose in the dual basis.

#include "hkcone/arith.hpp"
#include "hkcone/matrix.hpp"

namespace hkcone::mukai {

class MukaiPoint {
 public:
  // Validates u != 0, A square of size dim u, A^2 = 0 and im(A) in C u.
  MukaiPoint(RatVector u, RatMatrix a, RatVector polydisc = {});

  const RatVector& u() const { return u_; }
  const RatMatrix& endomorphism() const { return a_; }
  // Inert coordinates of the polydisc factor; carried through the flop unchanged.
  const RatVector& polydisc() const { return polydisc_; }
  std::size_t k() const { return u_.size() - 1; }
  bool on_zero_section() const { return a_.is_zero(); }

 private:
  RatVector u_;
  RatMatrix a_;
  RatVector polydisc_;
};

// Point ([phi], B) of the dual model in P(V*) x End(V*).
class DualMukaiPoint {
 public:
  DualMukaiPoint(RatVector phi, RatMatrix b, RatVector polydisc = {});

  const RatVector& phi() const { return phi_; }
  const RatMatrix& endomorphism() const { return b_; }
  const RatVector& polydisc() const { return polydisc_; }
  bool on_zero_section() const { return b_.is_zero(); }

 private:
  RatVector phi_;
  RatMatrix b_;
  RatVector polydisc_;
};

// ([u], u phi^T); requires u != 0 and phi(u) = 0.
MukaiPoint make_point(const RatVector& u, const RatVector& phi, RatVector polydisc = {});

RatMatrix contract(const MukaiPoint& m);
RatMatrix contract(const DualMukaiPoint& m);

// Dual of an endomorphism under the fixed identification End(V) = End(V*).
RatMatrix adjoint(const RatMatrix& a);

// Undefined on the zero section.
DualMukaiPoint flop(const MukaiPoint& m);
// The same construction from the dual side, landing back in M (V** = V).
MukaiPoint flop(const DualMukaiPoint& m);

// contract(flop(m)) == adjoint(contract(m)).
bool check_diagram(const MukaiPoint& m);

// Same point of projective space: all 2x2 minors of [a b] vanish.
bool projectively_equal(const RatVector& a, const RatVector& b);

// True if A lies in the nilpotent cone: A^2 = 0 and rank A <= 1.
bool in_nilpotent_cone(const RatMatrix& a);

}  // namespace hkcone::mukai
