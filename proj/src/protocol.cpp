#include "qep/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace qep {

namespace {

Quregister bell_pair() {
  CVector amps = CVector::Zero(4);
  amps(0) = 1.0 / std::sqrt(2.0);
  amps(3) = 1.0 / std::sqrt(2.0);
  return Quregister(2, std::move(amps));
}

}  // namespace

ProtocolStep parse_step(const std::string& label) {
  if (label == "t1") return ProtocolStep::T1;
  if (label == "t2") return ProtocolStep::T2;
  if (label == "t3") return ProtocolStep::T3;
  if (label == "t4") return ProtocolStep::T4;
  if (label == "t5") return ProtocolStep::T5;
  if (label == "t6") return ProtocolStep::T6;
  throw std::invalid_argument("unknown protocol step: " + label);
}

std::string to_string(ProtocolStep step) {
  switch (step) {
    case ProtocolStep::T1: return "t1";
    case ProtocolStep::T2: return "t2";
    case ProtocolStep::T3: return "t3";
    case ProtocolStep::T4: return "t4";
    case ProtocolStep::T5: return "t5";
    case ProtocolStep::T6: return "t6";
  }
  return "?";
}

Gate correction_gate(int x, int y) {
  if (x == 0 && y == 0) return identity_gate(1);
  if (x == 0 && y == 1) return not_gate(1);
  if (x == 1 && y == 0) return pauli_z();
  if (x == 1 && y == 1) return compose(not_gate(1), pauli_z());  // Z acts first
  throw std::invalid_argument("measurement bits must be 0 or 1");
}

std::string correction_label(int x, int y) {
  if (x == 0 && y == 0) return "I";
  if (x == 0 && y == 1) return "NOT";
  if (x == 1 && y == 0) return "Z";
  if (x == 1 && y == 1) return "NOT*Z";
  throw std::invalid_argument("measurement bits must be 0 or 1");
}

ProtocolTrace run_protocol(cdouble a0, cdouble a1, double eps) {
  const double norm = std::sqrt(std::norm(a0) + std::norm(a1));
  if (std::abs(norm - 1.0) > eps)
    throw std::invalid_argument("input amplitudes must be normalized");

  CVector qubit(2);
  qubit << a0, a1;
  const Quregister internal(1, qubit);

  // t1: Bell pair (external) with the payload qubit (internal).
  const Quregister t1 = tensor(bell_pair(), internal);
  // t2: clear the internal memory by swapping qubits 1 and 3.
  const Quregister t2 = apply(swap_gate(3, 1, 3), t1);
  // t3: XOR on the external pair.
  const Quregister t3 = apply(tensor(xor_gate(1, 1), identity_gate(1)), t2);
  // t4: Hadamard on qubit 1.
  const Quregister t4 =
      apply(tensor(hadamard_gate(1), tensor(identity_gate(1), identity_gate(1))), t3);

  std::array<ProtocolBranch, 4> branches = {{
      {0, 0, 0.0, t1, "", t1},
      {0, 1, 0.0, t1, "", t1},
      {1, 0, 0.0, t1, "", t1},
      {1, 1, 0.0, t1, "", t1},
  }};

  for (int outcome = 0; outcome < 4; ++outcome) {
    const int x = outcome >> 1;
    const int y = outcome & 1;

    // [P_{|x,y>} (x) I] keeps the amplitudes whose first two bits match.
    CVector projected = CVector::Zero(8);
    for (Eigen::Index k = 0; k < 8; ++k)
      if (((k >> 2) & 1) == x && ((k >> 1) & 1) == y) projected(k) = t4.amps(k);

    const double prob = projected.squaredNorm();
    // The collapse comes premultiplied by 2, which normalizes each branch.
    const Quregister t5(3, 2.0 * projected, eps);

    ProtocolBranch& branch = branches[outcome];
    branch.x = x;
    branch.y = y;
    branch.probability = prob;
    branch.state_t5 = t5;
    branch.order = correction_label(x, y);
    branch.state_t6 =
        apply(tensor(identity_gate(2), correction_gate(x, y)), t5);
  }

  return ProtocolTrace{a0, a1, t1, t2, t3, t4, std::move(branches)};
}

MemoryView memory_views(const ProtocolTrace& trace, ProtocolStep step, int branch) {
  const Quregister* global = nullptr;
  switch (step) {
    case ProtocolStep::T1: global = &trace.t1; break;
    case ProtocolStep::T2: global = &trace.t2; break;
    case ProtocolStep::T3: global = &trace.t3; break;
    case ProtocolStep::T4: global = &trace.t4; break;
    case ProtocolStep::T5:
    case ProtocolStep::T6:
      if (branch < 0 || branch > 3)
        throw std::invalid_argument("steps t5/t6 need a branch index in 0..3");
      global = (step == ProtocolStep::T5) ? &trace.branches[branch].state_t5
                                          : &trace.branches[branch].state_t6;
      break;
  }
  const Qumix full = projector(*global);
  return MemoryView{
      reduced_state(full, {3}),
      reduced_state(full, {1}),
      reduced_state(full, {2}),
      reduced_state(full, {1, 2}),
  };
}

bool end_to_end_identity_check(const ProtocolTrace& trace, double eps) {
  const Qumix initial = memory_views(trace, ProtocolStep::T1).internal;
  for (int b = 0; b < 4; ++b) {
    const Qumix final_state = memory_views(trace, ProtocolStep::T6, b).internal;
    if (frobenius_distance(final_state.rho, initial.rho) > eps) return false;
  }
  return true;
}

}  // namespace qep
