#pragma once

#include "qep/gates.hpp"
#include "qep/qcore.hpp"

// Truth-perspectives, T-registers, truth/falsity projections, T-probability,
// the probability preorder and the epistemic distance.

namespace qep {

// A 2x2 unitary fixing an agent's notions of Truth and Falsity: the images
// of |1> and |0> become the truth-values. Perspectives compare by matrix
// equality within eps, not up to global phase.
class TruthPerspective {
 public:
  explicit TruthPerspective(CMatrix matrix, double eps = kDefaultEpsilon);

  static TruthPerspective identity();
  static TruthPerspective hadamard();
  static TruthPerspective sqrt_not();

  const CMatrix& matrix() const { return matrix_; }

  Quregister truth() const;    // |1_T> = T|1>
  Quregister falsity() const;  // |0_T> = T|0>

 private:
  CMatrix matrix_;
};

bool same_perspective(const TruthPerspective& a, const TruthPerspective& b,
                      double eps = kDefaultEpsilon);

// T^(n): the n-fold Kronecker power, mapping the canonical basis to the
// T-registers.
Gate extend(const TruthPerspective& t, int n);

struct TruthProjections {
  CMatrix truth;    // projects onto the span of the T-true registers
  CMatrix falsity;  // projects onto the span of the T-false registers
};

// Computed as I^(n-1) (x) T P T^dagger rather than a 2^(n-1)-term projector
// sum; the two agree and this is O(4^n) cheaper.
TruthProjections truth_projection(const TruthPerspective& t, int n);

// p_T(rho) = Tr(P1 rho), the Born probability that rho satisfies T-Truth.
double probability(const TruthPerspective& t, const Qumix& rho);
double probability(const TruthPerspective& t, const Quregister& psi);

// rho is below sigma iff p_T(rho) <= p_T(sigma) (within eps).
bool preorder_leq(const TruthPerspective& t, const Qumix& rho, const Qumix& sigma,
                  double eps = kDefaultEpsilon);

// Fubini-Study distance between the two perspectives' Truth qubits.
double epistemic_distance(const TruthPerspective& a, const TruthPerspective& b);

}  // namespace qep
