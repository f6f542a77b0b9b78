#include "qep/gates.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "qep/truthspace.hpp"

namespace qep {

namespace {

// Bit of 1-based position p in an n-qubit basis index.
inline Eigen::Index bit_at(Eigen::Index index, int n, int p) {
  return (index >> (n - p)) & 1;
}

Gate permutation_gate(int n, const std::string& label,
                      const std::function<Eigen::Index(Eigen::Index)>& image) {
  const Eigen::Index dim = dim_for_qubits(n);
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) m(image(k), k) = 1.0;
  return Gate(n, std::move(m), label);
}

CMatrix hadamard_2x2() {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix h(2, 2);
  h << s, s, s, -s;
  return h;
}

CMatrix sqrt_not_2x2() {
  const cdouble a(0.5, -0.5);
  const cdouble b(0.5, 0.5);
  CMatrix m(2, 2);
  m << a, b, b, a;
  return m;
}

// Embeds a single-qubit matrix on the last of n qubits.
Gate last_qubit_gate(int n, const CMatrix& m, const std::string& label) {
  if (n < 1) throw std::invalid_argument(label + " requires n >= 1");
  const Eigen::Index rest = dim_for_qubits(n) / 2;
  return Gate(n, kron(CMatrix::Identity(rest, rest), m), label);
}

}  // namespace

Gate::Gate(int n_, CMatrix matrix_, std::string label_, double eps)
    : n(n_), matrix(std::move(matrix_)), label(std::move(label_)) {
  const Eigen::Index dim = dim_for_qubits(n);
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw std::invalid_argument("gate matrix has wrong shape for " + std::to_string(n) +
                                " qubits");
  if (!is_unitary(matrix, eps))
    throw std::invalid_argument("gate matrix is not unitary: " + label);
}

Gate identity_gate(int n) {
  const Eigen::Index dim = dim_for_qubits(n);
  return Gate(n, CMatrix::Identity(dim, dim), "I(" + std::to_string(n) + ")");
}

Gate not_gate(int n) {
  if (n < 1) throw std::invalid_argument("not_gate requires n >= 1");
  return permutation_gate(n, "NOT(" + std::to_string(n) + ")",
                          [](Eigen::Index k) { return k ^ 1; });
}

Gate toffoli_gate(int n, int m, int p) {
  if (n < 1 || m < 1 || p < 1)
    throw std::invalid_argument("toffoli_gate requires n,m,p >= 1");
  const int total = n + m + p;
  return permutation_gate(total,
                          "T(" + std::to_string(n) + "," + std::to_string(m) + "," +
                              std::to_string(p) + ")",
                          [total, n, m](Eigen::Index k) {
                            const Eigen::Index x = bit_at(k, total, n);
                            const Eigen::Index y = bit_at(k, total, n + m);
                            return k ^ (x & y);
                          });
}

Gate xor_gate(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("xor_gate requires n,m >= 1");
  const int total = n + m;
  return permutation_gate(total, "XOR(" + std::to_string(n) + "," + std::to_string(m) + ")",
                          [total, n](Eigen::Index k) { return k ^ bit_at(k, total, n); });
}

Gate swap_gate(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::invalid_argument("swap_gate indices must be in 1..n");
  return permutation_gate(n,
                          "SWAP(" + std::to_string(n) + ")(" + std::to_string(i) + "," +
                              std::to_string(j) + ")",
                          [n, i, j](Eigen::Index k) {
                            const Eigen::Index bi = bit_at(k, n, i);
                            const Eigen::Index bj = bit_at(k, n, j);
                            Eigen::Index out = k;
                            out &= ~((Eigen::Index{1} << (n - i)) | (Eigen::Index{1} << (n - j)));
                            out |= bj << (n - i);
                            out |= bi << (n - j);
                            return out;
                          });
}

Gate hadamard_gate(int n) {
  return last_qubit_gate(n, hadamard_2x2(), "sqrtI(" + std::to_string(n) + ")");
}

Gate sqrt_not_gate(int n) {
  return last_qubit_gate(n, sqrt_not_2x2(), "sqrtNOT(" + std::to_string(n) + ")");
}

Gate pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return Gate(1, std::move(m), "X");
}

Gate pauli_y() {
  CMatrix m(2, 2);
  m << cdouble(0, 0), cdouble(0, -1), cdouble(0, 1), cdouble(0, 0);
  return Gate(1, std::move(m), "Y");
}

Gate pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return Gate(1, std::move(m), "Z");
}

Gate tensor(const Gate& a, const Gate& b) {
  return Gate(a.n + b.n, kron(a.matrix, b.matrix), a.label + "(x)" + b.label);
}

Gate compose(const Gate& a, const Gate& b) {
  if (a.n != b.n) throw std::invalid_argument("compose: gate arities differ");
  return Gate(a.n, a.matrix * b.matrix, a.label + "*" + b.label);
}

Gate twin_gate(const Gate& g, const TruthPerspective& t) {
  const CMatrix tn = kron_power(t.matrix(), g.n);
  return Gate(g.n, tn * g.matrix * tn.adjoint(), g.label + "_T");
}

Quregister apply(const Gate& g, const Quregister& psi) {
  if (g.n != psi.n) throw std::invalid_argument("apply: gate arity does not match state");
  return Quregister(psi.n, g.matrix * psi.amps);
}

Qumix apply_to_qumix(const Gate& g, const Qumix& rho) {
  if (g.n != rho.n) throw std::invalid_argument("apply_to_qumix: gate arity does not match state");
  return Qumix(rho.n, g.matrix * rho.rho * g.matrix.adjoint());
}

}  // namespace qep
