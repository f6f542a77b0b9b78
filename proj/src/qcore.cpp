#include "qep/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace qep {

int max_qubits() {
  static const int cap = [] {
    if (const char* env = std::getenv("QEP_MAX_QUBITS")) {
      const int v = std::atoi(env);
      if (v >= 1) return v;
    }
    return 10;
  }();
  return cap;
}

Eigen::Index dim_for_qubits(int n) {
  if (n < 1) throw std::invalid_argument("qubit count must be >= 1");
  if (n > max_qubits())
    throw std::invalid_argument("qubit count " + std::to_string(n) +
                                " exceeds cap of " + std::to_string(max_qubits()));
  return Eigen::Index{1} << n;
}

int qubit_count_for_dim(Eigen::Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " is not a power of two >= 2");
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm();
}

bool is_hermitian(const CMatrix& m, double eps) {
  if (m.rows() != m.cols()) return false;
  return approx_equal(m, m.adjoint(), eps);
}

bool is_unitary(const CMatrix& m, double eps) {
  if (m.rows() != m.cols()) return false;
  const CMatrix gram = m.adjoint() * m;
  return approx_equal(gram, CMatrix::Identity(m.rows(), m.cols()), eps);
}

double min_eigenvalue(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_positive_semidefinite(const CMatrix& m, double eps) {
  if (!is_hermitian(m, eps)) return false;
  const CMatrix sym = (m + m.adjoint()) / 2.0;
  return min_eigenvalue(sym) >= -eps;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix kron_power(const CMatrix& a, int n) {
  if (n < 1) throw std::invalid_argument("kron_power requires n >= 1");
  CMatrix out = a;
  for (int i = 1; i < n; ++i) out = kron(out, a);
  return out;
}

Quregister::Quregister(int n_, CVector amplitudes, double eps)
    : n(n_), amps(std::move(amplitudes)) {
  if (amps.size() != dim_for_qubits(n))
    throw std::invalid_argument("amplitude vector has wrong length for " +
                                std::to_string(n) + " qubits");
  if (std::abs(amps.norm() - 1.0) > eps)
    throw std::invalid_argument("quregister must be a unit vector");
}

Quregister Quregister::basis_state(const std::vector<int>& bits) {
  const int n = static_cast<int>(bits.size());
  const Eigen::Index dim = dim_for_qubits(n);
  Eigen::Index index = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("basis bits must be 0 or 1");
    index = (index << 1) | b;
  }
  CVector amps = CVector::Zero(dim);
  amps(index) = 1.0;
  return Quregister(n, std::move(amps));
}

Qumix::Qumix(int n_, CMatrix matrix, double eps) : n(n_), rho(std::move(matrix)) {
  const Eigen::Index dim = dim_for_qubits(n);
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("density matrix has wrong shape for " +
                                std::to_string(n) + " qubits");
  if (!qumix_invariants_ok(rho, eps))
    throw std::invalid_argument("matrix is not a density operator (hermitian, PSD, unit trace)");
}

Qumix Qumix::maximally_mixed(int n) {
  const Eigen::Index dim = dim_for_qubits(n);
  return Qumix(n, CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

bool qumix_invariants_ok(const CMatrix& m, double eps) {
  if (m.rows() != m.cols()) return false;
  if (!is_hermitian(m, eps)) return false;
  if (std::abs(m.trace().real() - 1.0) > eps || std::abs(m.trace().imag()) > eps)
    return false;
  const CMatrix sym = (m + m.adjoint()) / 2.0;
  return min_eigenvalue(sym) >= -eps;
}

Quregister tensor(const Quregister& a, const Quregister& b) {
  return Quregister(a.n + b.n, kron(a.amps, b.amps));
}

Qumix tensor(const Qumix& a, const Qumix& b) {
  return Qumix(a.n + b.n, kron(a.rho, b.rho));
}

Qumix projector(const Quregister& psi) {
  return Qumix(psi.n, psi.amps * psi.amps.adjoint());
}

Qumix reduced_state(const Qumix& rho, const std::vector<int>& keep) {
  const int n = rho.n;
  std::set<int> seen;
  for (int q : keep) {
    if (q < 1 || q > n)
      throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range 1.." +
                                  std::to_string(n));
    if (!seen.insert(q).second)
      throw std::invalid_argument("duplicate qubit index " + std::to_string(q));
  }
  if (keep.empty()) throw std::invalid_argument("keep list must be nonempty");

  std::vector<int> traced;
  for (int q = 1; q <= n; ++q)
    if (!seen.count(q)) traced.push_back(q);

  const int m = static_cast<int>(keep.size());
  const int t = n - m;
  const Eigen::Index out_dim = Eigen::Index{1} << m;
  const Eigen::Index sum_dim = Eigen::Index{1} << t;

  // Bit of 1-based qubit position p lives at shift (n - p) in the full index.
  auto place = [n](Eigen::Index bits, const std::vector<int>& positions, int count) {
    Eigen::Index idx = 0;
    for (int k = 0; k < count; ++k) {
      const Eigen::Index bit = (bits >> (count - 1 - k)) & 1;
      idx |= bit << (n - positions[k]);
    }
    return idx;
  };

  CMatrix out = CMatrix::Zero(out_dim, out_dim);
  for (Eigen::Index r = 0; r < out_dim; ++r) {
    for (Eigen::Index c = 0; c < out_dim; ++c) {
      const Eigen::Index ri = place(r, keep, m);
      const Eigen::Index ci = place(c, keep, m);
      cdouble sum = 0.0;
      for (Eigen::Index s = 0; s < sum_dim; ++s) {
        const Eigen::Index si = place(s, traced, t);
        sum += rho.rho(ri | si, ci | si);
      }
      out(r, c) = sum;
    }
  }
  return Qumix(m, std::move(out));
}

Qumix reduced_state(const Quregister& psi, const std::vector<int>& keep) {
  return reduced_state(projector(psi), keep);
}

double purity(const Qumix& rho) {
  return (rho.rho * rho.rho).trace().real();
}

bool is_proper_mixture(const Qumix& rho, double eps) {
  return purity(rho) < 1.0 - eps;
}

double fubini_study_distance(const Quregister& psi, const Quregister& phi) {
  if (psi.n != 1 || phi.n != 1)
    throw std::invalid_argument("fubini_study_distance is defined on single qubits");
  const double overlap = std::abs(psi.amps.dot(phi.amps));
  const double clamped = std::clamp(overlap, 0.0, 1.0);
  return (2.0 / std::numbers::pi) * std::acos(clamped);
}

std::string to_string(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::NotEntangledWrtParts: return "not-entangled-wrt-parts";
    case EntanglementClass::EntangledWrtParts: return "entangled-wrt-parts";
    case EntanglementClass::NPartiteEntangled: return "n-partite-entangled";
    case EntanglementClass::MaximallyEntangled: return "maximally-entangled";
  }
  return "unknown";
}

EntanglementClass entanglement_class(const Quregister& psi,
                                     const std::vector<int>& parts,
                                     double eps) {
  const int n = psi.n;
  std::set<int> unique;
  for (int q : parts) {
    if (q < 1 || q > n)
      throw std::invalid_argument("part index " + std::to_string(q) + " out of range 1.." +
                                  std::to_string(n));
    unique.insert(q);
  }
  if (unique.empty()) throw std::invalid_argument("parts list must be nonempty");

  const Qumix full = projector(psi);
  bool all_proper = true;
  bool all_maximal = true;
  for (int q : unique) {
    const Qumix red = reduced_state(full, {q});
    if (!is_proper_mixture(red, eps)) all_proper = false;
    if (!approx_equal(red.rho, CMatrix::Identity(2, 2) / 2.0, eps)) all_maximal = false;
  }

  if (!all_proper) return EntanglementClass::NotEntangledWrtParts;
  if (static_cast<int>(unique.size()) == n) {
    return all_maximal ? EntanglementClass::MaximallyEntangled
                       : EntanglementClass::NPartiteEntangled;
  }
  return EntanglementClass::EntangledWrtParts;
}

}  // namespace qep
