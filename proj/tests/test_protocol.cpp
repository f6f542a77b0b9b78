#include <doctest.h>

#include <cmath>

#include "qep/channels.hpp"
#include "qep/protocol.hpp"
#include "qep/sampling.hpp"
#include "test_support.hpp"

using namespace qep;
using namespace qep_test;

namespace {

constexpr double kTol = 1e-9;

Quregister qubit_state(cdouble a0, cdouble a1) {
  CVector amps(2);
  amps << a0, a1;
  return Quregister(1, amps);
}

// Density comparison of a branch's internal memory against an expected qubit,
// which absorbs the global phase a correction may introduce.
bool internal_matches(const ProtocolTrace& trace, ProtocolStep step, int branch,
                      const Quregister& expected) {
  const Qumix internal = memory_views(trace, step, branch).internal;
  return approx_equal(internal.rho, projector(expected).rho, kTol);
}

}  // namespace

TEST_CASE("protocol rejects unnormalized input") {
  CHECK_THROWS_AS(run_protocol(1.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(run_protocol(std::sqrt(0.3), std::sqrt(0.7)));
}

TEST_CASE("step parsing") {
  CHECK(parse_step("t1") == ProtocolStep::T1);
  CHECK(parse_step("t6") == ProtocolStep::T6);
  CHECK(to_string(ProtocolStep::T3) == "t3");
  CHECK_THROWS_AS(parse_step("t7"), std::invalid_argument);
}

TEST_CASE("trace states match the protocol algebra") {
  const cdouble a0 = std::sqrt(0.3);
  const cdouble a1 = std::sqrt(0.7);
  const ProtocolTrace trace = run_protocol(a0, a1);
  const double s = 1.0 / std::sqrt(2.0);

  // t1 = Bell (x) payload
  CVector t1 = CVector::Zero(8);
  t1(0) = a0 * s;
  t1(1) = a1 * s;
  t1(6) = a0 * s;
  t1(7) = a1 * s;
  CHECK(approx_equal(trace.t1.amps, t1, kTol));

  // t2 = payload (x) Bell
  CVector t2 = CVector::Zero(8);
  t2(0) = a0 * s;
  t2(3) = a0 * s;
  t2(4) = a1 * s;
  t2(7) = a1 * s;
  CHECK(approx_equal(trace.t2.amps, t2, kTol));

  // t3: the XOR flips qubit 2 when qubit 1 is set.
  CVector t3 = CVector::Zero(8);
  t3(0) = a0 * s;  // |0,0,0>
  t3(3) = a0 * s;  // |0,1,1>
  t3(6) = a1 * s;  // |1,1,0>
  t3(5) = a1 * s;  // |1,0,1>
  CHECK(approx_equal(trace.t3.amps, t3, kTol));

  // t4: Hadamard on qubit 1.
  CVector t4 = CVector::Zero(8);
  t4(0) = a0 / 2.0;   // |0,0,0>
  t4(4) = a0 / 2.0;   // |1,0,0>
  t4(3) = a0 / 2.0;   // |0,1,1>
  t4(7) = a0 / 2.0;   // |1,1,1>
  t4(2) = a1 / 2.0;   // |0,1,0>
  t4(6) = -a1 / 2.0;  // |1,1,0>
  t4(1) = a1 / 2.0;   // |0,0,1>
  t4(5) = -a1 / 2.0;  // |1,0,1>
  CHECK(approx_equal(trace.t4.amps, t4, kTol));
}

TEST_CASE("branch states carry the four listed payloads") {
  const cdouble a0 = std::sqrt(0.3);
  const cdouble a1 = std::sqrt(0.7);
  const ProtocolTrace trace = run_protocol(a0, a1);

  CHECK(approx_equal(trace.branches[0].state_t5.amps,
                     tensor(ket({0, 0}), qubit_state(a0, a1)).amps, kTol));
  CHECK(approx_equal(trace.branches[1].state_t5.amps,
                     tensor(ket({0, 1}), qubit_state(a1, a0)).amps, kTol));
  CHECK(approx_equal(trace.branches[2].state_t5.amps,
                     tensor(ket({1, 0}), qubit_state(a0, -a1)).amps, kTol));
  CHECK(approx_equal(trace.branches[3].state_t5.amps,
                     tensor(ket({1, 1}), qubit_state(-a1, a0)).amps, kTol));
}

TEST_CASE("branch probabilities are a quarter each") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Quregister input = random_qubit(rng);
    const ProtocolTrace trace = run_protocol(input.amps(0), input.amps(1));
    double total = 0.0;
    for (const ProtocolBranch& b : trace.branches) {
      CHECK(b.probability == doctest::Approx(0.25).epsilon(kTol));
      CHECK(b.state_t5.amps.norm() == doctest::Approx(1.0).epsilon(kTol));
      total += b.probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(kTol));
  }
}

TEST_CASE("basis input reaches |0> in every branch") {
  const ProtocolTrace trace = run_protocol(1.0, 0.0);
  for (int b = 0; b < 4; ++b) CHECK(internal_matches(trace, ProtocolStep::T6, b, ket({0})));
}

TEST_CASE("pre-correction internal states and Bob's orders") {
  const cdouble a0 = std::sqrt(0.3);
  const cdouble a1 = std::sqrt(0.7);
  const ProtocolTrace trace = run_protocol(a0, a1);

  CHECK(internal_matches(trace, ProtocolStep::T5, 0, qubit_state(a0, a1)));
  CHECK(internal_matches(trace, ProtocolStep::T5, 1, qubit_state(a1, a0)));
  CHECK(internal_matches(trace, ProtocolStep::T5, 2, qubit_state(a0, -a1)));
  CHECK(internal_matches(trace, ProtocolStep::T5, 3, qubit_state(a1, -a0)));

  CHECK(trace.branches[0].order == "I");
  CHECK(trace.branches[1].order == "NOT");
  CHECK(trace.branches[2].order == "Z");
  CHECK(trace.branches[3].order == "NOT*Z");

  // After the orders every branch holds the original payload again.
  for (int b = 0; b < 4; ++b)
    CHECK(internal_matches(trace, ProtocolStep::T6, b, qubit_state(a0, a1)));
}

TEST_CASE("correction operator order is NOT after Z") {
  const Gate c = correction_gate(1, 1);
  const CMatrix expected = not_gate(1).matrix * pauli_z().matrix;
  CHECK(approx_equal(c.matrix, expected, kTol));
  CHECK(correction_label(1, 1) == "NOT*Z");
  CHECK_THROWS_AS(correction_gate(2, 0), std::invalid_argument);
}

TEST_CASE("end-to-end identity check") {
  Rng rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    const Quregister input = random_qubit(rng);
    CHECK(end_to_end_identity_check(run_protocol(input.amps(0), input.amps(1))));
  }
  CHECK(end_to_end_identity_check(
      run_protocol(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0))));
}

TEST_CASE("swapping the NOT and Z corrections breaks retrieval") {
  const cdouble a0 = std::sqrt(0.3);
  const cdouble a1 = std::sqrt(0.7);
  const ProtocolTrace trace = run_protocol(a0, a1);

  // Apply Z where NOT belongs (branch 01) and NOT where Z belongs (branch 10).
  const Quregister wrong01 =
      apply(tensor(identity_gate(2), pauli_z()), trace.branches[1].state_t5);
  const Quregister wrong10 =
      apply(tensor(identity_gate(2), not_gate(1)), trace.branches[2].state_t5);

  const Qumix expected = projector(qubit_state(a0, a1));
  CHECK(!approx_equal(reduced_state(projector(wrong01), {3}).rho, expected.rho, kTol));
  CHECK(!approx_equal(reduced_state(projector(wrong10), {3}).rho, expected.rho, kTol));
}

TEST_CASE("memory views at the early steps") {
  const cdouble a0 = std::sqrt(0.3);
  const cdouble a1 = std::sqrt(0.7);
  const ProtocolTrace trace = run_protocol(a0, a1);
  const CMatrix half = CMatrix::Identity(2, 2) / 2.0;

  const MemoryView at_t1 = memory_views(trace, ProtocolStep::T1);
  CHECK(approx_equal(at_t1.internal.rho, projector(qubit_state(a0, a1)).rho, kTol));
  CHECK(approx_equal(at_t1.external_s1.rho, half, kTol));
  CHECK(approx_equal(at_t1.external_s2.rho, half, kTol));
  CHECK(approx_equal(at_t1.external_pair.rho, projector(bell_pair()).rho, kTol));

  const MemoryView at_t2 = memory_views(trace, ProtocolStep::T2);
  CHECK(approx_equal(at_t2.internal.rho, half, kTol));
  CHECK(approx_equal(at_t2.external_s1.rho, projector(qubit_state(a0, a1)).rho, kTol));

  CHECK_THROWS_AS(memory_views(trace, ProtocolStep::T5), std::invalid_argument);
  CHECK_THROWS_AS(memory_views(trace, ProtocolStep::T6, 4), std::invalid_argument);
}

TEST_CASE("memory views agree with the embedding-operator oracle at t2") {
  const ProtocolTrace trace = run_protocol(1.0, 0.0);
  const CMatrix full = projector(trace.t2).rho;
  const MemoryView view = memory_views(trace, ProtocolStep::T2);
  CHECK(approx_equal(view.internal.rho, oracle_reduced(full, 3, {3}), kTol));
  CHECK(approx_equal(view.external_pair.rho, oracle_reduced(full, 3, {1, 2}), kTol));

  // For a basis payload, every subsystem except the Bell pair is pure.
  CHECK(!is_proper_mixture(view.external_s1));
  CHECK(is_proper_mixture(view.internal));
  CHECK(is_proper_mixture(view.external_s2));
}

TEST_CASE("clearing the internal memory is the full depolarizing operation") {
  Rng rng(63);
  const KrausChannel full_depolarizing = depolarizing_channel(1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Quregister input = random_qubit(rng);
    const ProtocolTrace trace = run_protocol(input.amps(0), input.amps(1));
    const Qumix cleared = memory_views(trace, ProtocolStep::T2).internal;
    const Qumix channel_out = apply_channel(full_depolarizing, projector(input));
    CHECK(approx_equal(cleared.rho, CMatrix::Identity(2, 2) / 2.0, kTol));
    CHECK(approx_equal(cleared.rho, channel_out.rho, kTol));
  }
}

TEST_CASE("t4 external pair weights the four outcomes equally") {
  // The diagonal of Red^{1,2}(t4) is flat, which is what makes the four
  // measurement outcomes equiprobable. The full matrix is not I/4: the
  // off-diagonal (xy, x'y') entry is <phi_{x'y'}|phi_xy>/4 over the four
  // branch payloads, which do not form an orthogonal family.
  Rng rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    const Quregister input = random_qubit(rng);
    const ProtocolTrace trace = run_protocol(input.amps(0), input.amps(1));
    const MemoryView view = memory_views(trace, ProtocolStep::T4);
    for (int d = 0; d < 4; ++d)
      CHECK(view.external_pair.rho(d, d).real() == doctest::Approx(0.25).epsilon(kTol));
    CHECK(approx_equal(view.external_pair.rho, oracle_reduced(projector(trace.t4).rho, 3, {1, 2}),
                       kTol));
  }

  const ProtocolTrace trace = run_protocol(std::sqrt(0.3), std::sqrt(0.7));
  const MemoryView view = memory_views(trace, ProtocolStep::T4);
  // <phi_01|phi_00>/4 = 2 a0 a1 / 4 for real amplitudes.
  CHECK(view.external_pair.rho(0, 1).real() ==
        doctest::Approx(0.5 * std::sqrt(0.3) * std::sqrt(0.7)).epsilon(kTol));
}

TEST_CASE("unitary steps preserve the norm") {
  Rng rng(65);
  for (int trial = 0; trial < 10; ++trial) {
    const Quregister input = random_qubit(rng);
    const ProtocolTrace trace = run_protocol(input.amps(0), input.amps(1));
    CHECK(trace.t2.amps.norm() == doctest::Approx(1.0).epsilon(kTol));
    CHECK(trace.t3.amps.norm() == doctest::Approx(1.0).epsilon(kTol));
    CHECK(trace.t4.amps.norm() == doctest::Approx(1.0).epsilon(kTol));
    for (const ProtocolBranch& b : trace.branches)
      CHECK(b.state_t6.amps.norm() == doctest::Approx(1.0).epsilon(kTol));
  }
}
