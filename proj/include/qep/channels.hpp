#pragma once

#include <functional>
#include <vector>

#include "qep/qcore.hpp"
#include "qep/truthspace.hpp"

// Quantum channels in Kraus form, their superoperator representation, and the
// structural checks (trace preservation, complete positivity via the Choi
// matrix) that certify a linear map as a channel.

namespace qep {

struct KrausChannel {
  int n;
  std::vector<CMatrix> kraus_ops;

  // Validates the completeness condition sum E_i^dagger E_i = I.
  KrausChannel(int n, std::vector<CMatrix> ops, double eps = kDefaultEpsilon);
};

Qumix apply_channel(const KrausChannel& ch, const Qumix& rho);

// A linear map on 2^n x 2^n matrices stored as its 4^n x 4^n matrix over the
// matrix-unit basis |j><k| enumerated row-major.
struct SuperOperator {
  int n;
  CMatrix action;

  SuperOperator(int n, CMatrix action);

  // Samples f on every matrix unit; f must be linear for the rest of the
  // machinery to be meaningful.
  static SuperOperator from_map(int n, const std::function<CMatrix(const CMatrix&)>& f);

  CMatrix apply(const CMatrix& a) const;
};

SuperOperator kraus_to_superoperator(const KrausChannel& ch);

bool is_trace_preserving(const SuperOperator& s, double eps = kDefaultEpsilon);

// Choi matrix sum_{jk} |j><k| (x) E(|j><k|), ancilla qubits first.
CMatrix choi_matrix(const SuperOperator& s);

// Smallest eigenvalue of the Hermitian part of the Choi matrix.
double choi_min_eigenvalue(const SuperOperator& s);

bool is_completely_positive(const SuperOperator& s, double eps = kDefaultEpsilon);

// The four-Kraus-operator family E_0 = (sqrt(4-3p)/2) I, E_i = (sqrt(p)/2)
// {X,Y,Z}, each conjugated into the given perspective. Its superoperator is
// perspective-independent.
KrausChannel depolarizing_channel(double p,
                                  const TruthPerspective& t = TruthPerspective::identity());

}  // namespace qep
