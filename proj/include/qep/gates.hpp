#pragma once

#include <string>

#include "qep/qcore.hpp"

// Canonical logical gates as explicit dense unitaries, their twin versions
// under a truth-perspective, and their action on states and qumixes.

namespace qep {

class TruthPerspective;

struct Gate {
  int n;
  CMatrix matrix;
  std::string label;

  Gate(int n, CMatrix matrix, std::string label = "", double eps = kDefaultEpsilon);
};

Gate identity_gate(int n);

// |x1,...,xn> -> |x1,...,x_{n-1}> (x) |1-xn>
Gate not_gate(int n);

// Arity n+m+p; the last target bit becomes xn*ym (+) zp (addition mod 2).
Gate toffoli_gate(int n, int m, int p);

// Arity n+m; the last bit becomes xn (+) ym.
Gate xor_gate(int n, int m);

// Exchanges the i-th and j-th qubits (1-based).
Gate swap_gate(int n, int i, int j);

// Acts on the last qubit: |xn> -> (1/sqrt 2)((-1)^xn |xn> + |1-xn>).
Gate hadamard_gate(int n);

// Acts on the last qubit: |xn> -> (1-i)/2 |xn> + (1+i)/2 |1-xn>.
Gate sqrt_not_gate(int n);

Gate pauli_x();
Gate pauli_y();
Gate pauli_z();

// Explicit embedding of smaller gates into larger registers; a's qubits first.
Gate tensor(const Gate& a, const Gate& b);
// Matrix product a*b (b acts first).
Gate compose(const Gate& a, const Gate& b);

// G_T = T^(n) G T^(n)^dagger.
Gate twin_gate(const Gate& g, const TruthPerspective& t);

Quregister apply(const Gate& g, const Quregister& psi);

// The qumix gate G rho G^dagger.
Qumix apply_to_qumix(const Gate& g, const Qumix& rho);

}  // namespace qep
