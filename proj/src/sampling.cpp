#include "qep/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qep {

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

cdouble Rng::complex_normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return cdouble(r * std::cos(angle), r * std::sin(angle));
}

Quregister random_quregister(Rng& rng, int n) {
  const Eigen::Index dim = dim_for_qubits(n);
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  v.normalize();
  return Quregister(n, std::move(v));
}

Quregister random_qubit(Rng& rng) { return random_quregister(rng, 1); }

CMatrix random_unitary(Rng& rng, Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("random_unitary requires dim >= 1");
  CMatrix ginibre(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) ginibre(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(ginibre);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the diagonal phases so the distribution is Haar.
  for (Eigen::Index i = 0; i < dim; ++i) {
    const cdouble d = r(i, i);
    const double mag = std::abs(d);
    q.col(i) *= (mag > 0.0) ? d / mag : cdouble(1.0, 0.0);
  }
  return q;
}

TruthPerspective random_truth_perspective(Rng& rng) {
  return TruthPerspective(random_unitary(rng, 2));
}

Qumix random_qumix(Rng& rng, int n, int rank) {
  const Eigen::Index dim = dim_for_qubits(n);
  const int k = rank > 0 ? rank : static_cast<int>(dim);
  std::vector<double> weights(k);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    weights[i] = -std::log1p(-rng.uniform());
    total += weights[i];
  }
  CMatrix rho = CMatrix::Zero(dim, dim);
  for (int i = 0; i < k; ++i) {
    const Quregister psi = random_quregister(rng, n);
    rho += (weights[i] / total) * (psi.amps * psi.amps.adjoint());
  }
  return Qumix(n, std::move(rho));
}

}  // namespace qep
