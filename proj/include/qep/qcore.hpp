#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

// Dense complex linear algebra over qubit tensor spaces: states, density
// operators, tensor products, partial trace, projectors, distances.

namespace qep {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Tolerance used by all equality / PSD / unitarity checks.
inline constexpr double kDefaultEpsilon = 1e-9;

// Dense 2^n storage caps the register size. Default 10 qubits, overridable
// through the QEP_MAX_QUBITS environment variable (read once at startup).
int max_qubits();

Eigen::Index dim_for_qubits(int n);
int qubit_count_for_dim(Eigen::Index dim);

double frobenius_distance(const CMatrix& a, const CMatrix& b);

// Entrywise comparison; accepts any pair of Eigen expressions.
template <typename DerivedA, typename DerivedB>
bool approx_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                  double eps = kDefaultEpsilon) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a.derived() - b.derived()).cwiseAbs().maxCoeff() <= eps;
}
bool is_hermitian(const CMatrix& m, double eps = kDefaultEpsilon);
bool is_unitary(const CMatrix& m, double eps = kDefaultEpsilon);
// PSD test via eigenvalue decomposition of the Hermitian part.
bool is_positive_semidefinite(const CMatrix& m, double eps = kDefaultEpsilon);
double min_eigenvalue(const CMatrix& hermitian);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);
CMatrix kron_power(const CMatrix& a, int n);

// A pure state of n qubits: unit vector in the 2^n-dimensional space.
// Basis convention: |x1,...,xn> sits at index x1*2^(n-1) + ... + xn, so the
// last listed qubit is the least significant bit.
struct Quregister {
  int n;
  CVector amps;

  Quregister(int n, CVector amplitudes, double eps = kDefaultEpsilon);

  // |x1,...,xn> for the given bits (each 0 or 1).
  static Quregister basis_state(const std::vector<int>& bits);
};

// A density operator on n qubits: Hermitian, PSD, unit trace (within eps).
struct Qumix {
  int n;
  CMatrix rho;

  Qumix(int n, CMatrix matrix, double eps = kDefaultEpsilon);

  static Qumix maximally_mixed(int n);
};

// True iff m is Hermitian, PSD and unit-trace within eps.
bool qumix_invariants_ok(const CMatrix& m, double eps = kDefaultEpsilon);

// Kronecker composition; qubit order is a's qubits then b's.
Quregister tensor(const Quregister& a, const Quregister& b);
Qumix tensor(const Qumix& a, const Qumix& b);

// Rank-1 projector P_psi = |psi><psi|.
Qumix projector(const Quregister& psi);

// Partial trace keeping the listed qubits (1-based), in the listed order.
Qumix reduced_state(const Qumix& rho, const std::vector<int>& keep);
Qumix reduced_state(const Quregister& psi, const std::vector<int>& keep);

// Tr(rho^2); equals 1 exactly for pure states.
double purity(const Qumix& rho);
bool is_proper_mixture(const Qumix& rho, double eps = kDefaultEpsilon);

// (2/pi) arccos |<psi|phi>| for single qubits.
double fubini_study_distance(const Quregister& psi, const Quregister& phi);

enum class EntanglementClass {
  NotEntangledWrtParts,
  EntangledWrtParts,
  NPartiteEntangled,
  MaximallyEntangled,
};

std::string to_string(EntanglementClass c);

// Classifies psi against the listed parts: entangled w.r.t. the parts iff
// every single-qubit reduced state over them is a proper mixture; n-partite
// when the parts cover all qubits; maximally when additionally every reduced
// state is the maximally mixed qubit.
EntanglementClass entanglement_class(const Quregister& psi,
                                     const std::vector<int>& parts,
                                     double eps = kDefaultEpsilon);

}  // namespace qep
