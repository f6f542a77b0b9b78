#pragma once

#include <array>
#include <string>

#include "qep/gates.hpp"
#include "qep/qcore.hpp"

// The memorize-and-retrieve teleportation protocol over Alice's three-qubit
// physical memory system: qubits 1,2 hold the external memory (a Bell pair at
// the start), qubit 3 the internal memory. All four measurement branches are
// always produced; sampling one is left to callers.

namespace qep {

enum class ProtocolStep { T1, T2, T3, T4, T5, T6 };

ProtocolStep parse_step(const std::string& label);  // "t1".."t6"
std::string to_string(ProtocolStep step);

struct ProtocolBranch {
  int x = 0;
  int y = 0;
  double probability = 0.0;
  Quregister state_t5;   // post-measurement global state (factor-2 renormalized)
  std::string order;     // Bob's correction order: I, NOT, Z or NOT*Z
  Quregister state_t6;   // after the correction on qubit 3
};

struct ProtocolTrace {
  cdouble a0;
  cdouble a1;
  Quregister t1, t2, t3, t4;
  std::array<ProtocolBranch, 4> branches;  // outcome order 00, 01, 10, 11
};

ProtocolTrace run_protocol(cdouble a0, cdouble a1, double eps = kDefaultEpsilon);

struct MemoryView {
  Qumix internal;       // Red^3
  Qumix external_s1;    // Red^1
  Qumix external_s2;    // Red^2
  Qumix external_pair;  // Red^{1,2}
};

// Reduced internal/external memory states at a step; a branch index (0..3)
// selects the global state for t5 and t6.
MemoryView memory_views(const ProtocolTrace& trace, ProtocolStep step, int branch = -1);

// True iff every branch's corrected internal memory equals the initial one as
// a density operator (which absorbs global phase).
bool end_to_end_identity_check(const ProtocolTrace& trace, double eps = kDefaultEpsilon);

// Correction gate for measurement outcome |x,y>: I, NOT, Z, NOT*Z.
Gate correction_gate(int x, int y);
std::string correction_label(int x, int y);

}  // namespace qep
