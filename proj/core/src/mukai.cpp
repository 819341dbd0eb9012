#include "hkcone/mukai.hpp"

#include <algorithm>

namespace hkcone::mukai {
namespace {

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

// Checks the defining equations of the model for a (vector, endomorphism) pair.
void validate(const RatVector& line, const RatMatrix& a, const char* what) {
  if (line.empty() || is_zero(line)) throw precondition_error(std::string(what) + ": zero vector has no projective point");
  if (a.rows() != line.size() || a.cols() != line.size())
    throw precondition_error(std::string(what) + ": endomorphism size does not match the vector");
  if (!(a * a).is_zero()) throw precondition_error(std::string(what) + ": endomorphism does not square to zero");
  for (std::size_t j = 0; j < a.cols(); ++j) {
    RatVector col = a.column(j);
    if (!is_zero(col) && !projectively_equal(col, line))
      throw precondition_error(std::string(what) + ": image of the endomorphism is not on the line");
  }
}

// Defining covector of ker(A) for a rank-one A: any nonzero row.
RatVector kernel_covector(const RatMatrix& a) {
  if (rank(a) != 1) throw precondition_error("flop is undefined on the zero section");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    RatVector row = a.row(i);
    if (!is_zero(row)) return row;
  }
  throw std::logic_error("rank-one matrix without a nonzero row");
}

}  // namespace

MukaiPoint::MukaiPoint(RatVector u, RatMatrix a, RatVector polydisc)
    : u_(std::move(u)), a_(std::move(a)), polydisc_(std::move(polydisc)) {
  validate(u_, a_, "MukaiPoint");
}

DualMukaiPoint::DualMukaiPoint(RatVector phi, RatMatrix b, RatVector polydisc)
    : phi_(std::move(phi)), b_(std::move(b)), polydisc_(std::move(polydisc)) {
  validate(phi_, b_, "DualMukaiPoint");
}

MukaiPoint make_point(const RatVector& u, const RatVector& phi, RatVector polydisc) {
  if (u.size() != phi.size()) throw precondition_error("u and phi have different dimensions");
  if (is_zero(u)) throw precondition_error("u must be nonzero");
  if (dot(phi, u) != 0) throw precondition_error("phi(u) must vanish, got " + to_string(dot(phi, u)));
  return MukaiPoint(u, outer(u, phi), std::move(polydisc));
}

RatMatrix contract(const MukaiPoint& m) { return m.endomorphism(); }
RatMatrix contract(const DualMukaiPoint& m) { return m.endomorphism(); }

RatMatrix adjoint(const RatMatrix& a) { return a.transposed(); }

DualMukaiPoint flop(const MukaiPoint& m) {
  if (m.on_zero_section()) throw precondition_error("flop is undefined on the zero section");
  return DualMukaiPoint(kernel_covector(m.endomorphism()), adjoint(m.endomorphism()), m.polydisc());
}

MukaiPoint flop(const DualMukaiPoint& m) {
  if (m.on_zero_section()) throw precondition_error("flop is undefined on the zero section");
  return MukaiPoint(kernel_covector(m.endomorphism()), adjoint(m.endomorphism()), m.polydisc());
}

bool check_diagram(const MukaiPoint& m) {
  if (m.on_zero_section()) throw precondition_error("diagram check is undefined on the zero section");
  DualMukaiPoint d = flop(m);
  if (!in_nilpotent_cone(contract(d))) return false;
  // The dual point must be ker(A): phi vanishes exactly on ker A.
  for (const auto& v : nullspace(m.endomorphism()))
    if (dot(d.phi(), v) != 0) return false;
  return contract(d) == adjoint(contract(m));
}

bool projectively_equal(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size() || is_zero(a) || is_zero(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

bool in_nilpotent_cone(const RatMatrix& a) {
  return a.rows() == a.cols() && (a * a).is_zero() && rank(a) <= 1;
}

}  // namespace hkcone::mukai
