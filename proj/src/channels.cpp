#include "qep/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "qep/gates.hpp"

namespace qep {

KrausChannel::KrausChannel(int n_, std::vector<CMatrix> ops, double eps)
    : n(n_), kraus_ops(std::move(ops)) {
  const Eigen::Index dim = dim_for_qubits(n);
  if (kraus_ops.empty()) throw std::invalid_argument("Kraus channel needs at least one operator");
  CMatrix completeness = CMatrix::Zero(dim, dim);
  for (const CMatrix& e : kraus_ops) {
    if (e.rows() != dim || e.cols() != dim)
      throw std::invalid_argument("Kraus operator has wrong shape for " + std::to_string(n) +
                                  " qubits");
    completeness += e.adjoint() * e;
  }
  if (!approx_equal(completeness, CMatrix::Identity(dim, dim), eps))
    throw std::invalid_argument("Kraus operators violate sum E_i^dagger E_i = I");
}

Qumix apply_channel(const KrausChannel& ch, const Qumix& rho) {
  if (ch.n != rho.n) throw std::invalid_argument("apply_channel: arity mismatch");
  CMatrix out = CMatrix::Zero(rho.rho.rows(), rho.rho.cols());
  for (const CMatrix& e : ch.kraus_ops) out += e * rho.rho * e.adjoint();
  return Qumix(rho.n, std::move(out));
}

SuperOperator::SuperOperator(int n_, CMatrix action_) : n(n_), action(std::move(action_)) {
  const Eigen::Index dim = dim_for_qubits(n);
  if (action.rows() != dim * dim || action.cols() != dim * dim)
    throw std::invalid_argument("superoperator matrix must be 4^n x 4^n");
}

SuperOperator SuperOperator::from_map(int n,
                                      const std::function<CMatrix(const CMatrix&)>& f) {
  const Eigen::Index dim = dim_for_qubits(n);
  CMatrix action(dim * dim, dim * dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      CMatrix unit = CMatrix::Zero(dim, dim);
      unit(j, k) = 1.0;
      const CMatrix image = f(unit);
      if (image.rows() != dim || image.cols() != dim)
        throw std::invalid_argument("map image has wrong shape");
      // Column (j,k) holds the row-major vectorization of the image.
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
          action(r * dim + c, j * dim + k) = image(r, c);
    }
  }
  return SuperOperator(n, std::move(action));
}

CMatrix SuperOperator::apply(const CMatrix& a) const {
  const Eigen::Index dim = dim_for_qubits(n);
  if (a.rows() != dim || a.cols() != dim)
    throw std::invalid_argument("superoperator input has wrong shape");
  CVector vec(dim * dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) vec(r * dim + c) = a(r, c);
  const CVector out = action * vec;
  CMatrix image(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) image(r, c) = out(r * dim + c);
  return image;
}

SuperOperator kraus_to_superoperator(const KrausChannel& ch) {
  return SuperOperator::from_map(ch.n, [&ch](const CMatrix& a) {
    CMatrix out = CMatrix::Zero(a.rows(), a.cols());
    for (const CMatrix& e : ch.kraus_ops) out += e * a * e.adjoint();
    return out;
  });
}

bool is_trace_preserving(const SuperOperator& s, double eps) {
  const Eigen::Index dim = dim_for_qubits(s.n);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      // Tr(E(|j><k|)) read off the action column; must equal delta_jk.
      cdouble tr = 0.0;
      for (Eigen::Index l = 0; l < dim; ++l) tr += s.action(l * dim + l, j * dim + k);
      const cdouble expected = (j == k) ? 1.0 : 0.0;
      if (std::abs(tr - expected) > eps) return false;
    }
  }
  return true;
}

CMatrix choi_matrix(const SuperOperator& s) {
  const Eigen::Index dim = dim_for_qubits(s.n);
  CMatrix choi = CMatrix::Zero(dim * dim, dim * dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      // Block (j,k) of the Choi matrix is E(|j><k|).
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
          choi(j * dim + r, k * dim + c) = s.action(r * dim + c, j * dim + k);
    }
  }
  return choi;
}

double choi_min_eigenvalue(const SuperOperator& s) {
  const CMatrix choi = choi_matrix(s);
  return min_eigenvalue((choi + choi.adjoint()) / 2.0);
}

bool is_completely_positive(const SuperOperator& s, double eps) {
  const CMatrix choi = choi_matrix(s);
  if (!is_hermitian(choi, eps)) return false;
  return min_eigenvalue((choi + choi.adjoint()) / 2.0) >= -eps;
}

KrausChannel depolarizing_channel(double p, const TruthPerspective& t) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("depolarizing parameter must lie in [0,1]");
  const CMatrix& u = t.matrix();
  std::vector<CMatrix> ops;
  ops.push_back(std::sqrt(4.0 - 3.0 * p) / 2.0 * CMatrix::Identity(2, 2));
  ops.push_back(std::sqrt(p) / 2.0 * pauli_x().matrix);
  ops.push_back(std::sqrt(p) / 2.0 * pauli_y().matrix);
  ops.push_back(std::sqrt(p) / 2.0 * pauli_z().matrix);
  for (CMatrix& e : ops) e = u * e * u.adjoint();
  return KrausChannel(1, std::move(ops));
}

}  // namespace qep
