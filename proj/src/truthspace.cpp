#include "qep/truthspace.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qep {

TruthPerspective::TruthPerspective(CMatrix matrix, double eps)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != 2 || matrix_.cols() != 2)
    throw std::invalid_argument("truth-perspective must be a 2x2 matrix");
  if (!is_unitary(matrix_, eps))
    throw std::invalid_argument("truth-perspective must be unitary");
}

TruthPerspective TruthPerspective::identity() {
  return TruthPerspective(CMatrix::Identity(2, 2));
}

TruthPerspective TruthPerspective::hadamard() {
  return TruthPerspective(hadamard_gate(1).matrix);
}

TruthPerspective TruthPerspective::sqrt_not() {
  return TruthPerspective(sqrt_not_gate(1).matrix);
}

Quregister TruthPerspective::truth() const {
  CVector one(2);
  one << 0.0, 1.0;
  return Quregister(1, matrix_ * one);
}

Quregister TruthPerspective::falsity() const {
  CVector zero(2);
  zero << 1.0, 0.0;
  return Quregister(1, matrix_ * zero);
}

bool same_perspective(const TruthPerspective& a, const TruthPerspective& b, double eps) {
  return approx_equal(a.matrix(), b.matrix(), eps);
}

Gate extend(const TruthPerspective& t, int n) {
  if (n < 1) throw std::invalid_argument("extend requires n >= 1");
  return Gate(n, kron_power(t.matrix(), n), "T(" + std::to_string(n) + ")");
}

TruthProjections truth_projection(const TruthPerspective& t, int n) {
  if (n < 1) throw std::invalid_argument("truth_projection requires n >= 1");
  CMatrix p1_qubit = CMatrix::Zero(2, 2);
  p1_qubit(1, 1) = 1.0;
  const CMatrix rotated = t.matrix() * p1_qubit * t.matrix().adjoint();
  const Eigen::Index rest = dim_for_qubits(n) / 2;
  const CMatrix truth = kron(CMatrix::Identity(rest, rest), rotated);
  const CMatrix falsity = CMatrix::Identity(2 * rest, 2 * rest) - truth;
  return {truth, falsity};
}

double probability(const TruthPerspective& t, const Qumix& rho) {
  const TruthProjections proj = truth_projection(t, rho.n);
  return (proj.truth * rho.rho).trace().real();
}

double probability(const TruthPerspective& t, const Quregister& psi) {
  return probability(t, projector(psi));
}

bool preorder_leq(const TruthPerspective& t, const Qumix& rho, const Qumix& sigma,
                  double eps) {
  if (rho.n != sigma.n) throw std::invalid_argument("preorder_leq: dimension mismatch");
  return probability(t, rho) <= probability(t, sigma) + eps;
}

double epistemic_distance(const TruthPerspective& a, const TruthPerspective& b) {
  return fubini_study_distance(a.truth(), b.truth());
}

}  // namespace qep
