#include <doctest.h>

#include <cmath>

#include "qep/channels.hpp"
#include "qep/gates.hpp"
#include "qep/sampling.hpp"
#include "test_support.hpp"

using namespace qep;
using namespace qep_test;

namespace {

constexpr double kTol = 1e-9;

SuperOperator transpose_map() {
  return SuperOperator::from_map(1, [](const CMatrix& a) { return a.transpose().eval(); });
}

// Amplitude damping: a standard non-unital Kraus pair, used as a generic
// valid channel that is neither unitary nor depolarizing.
KrausChannel amplitude_damping(double gamma) {
  CMatrix e0(2, 2), e1(2, 2);
  e0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  e1 << 0, std::sqrt(gamma), 0, 0;
  return KrausChannel(1, {e0, e1});
}

}  // namespace

TEST_CASE("kraus completeness is enforced") {
  CHECK_NOTHROW(KrausChannel(1, {CMatrix::Identity(2, 2)}));
  CHECK_THROWS_AS(KrausChannel(1, {CMatrix::Identity(2, 2) * 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(KrausChannel(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(KrausChannel(1, {CMatrix::Identity(4, 4)}), std::invalid_argument);
}

TEST_CASE("single unitary kraus operator reproduces the qumix gate") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Gate g(1, random_unitary(rng, 2), "random");
    const KrausChannel ch(1, {g.matrix});
    const Qumix rho = random_qumix(rng, 1);
    CHECK(approx_equal(apply_channel(ch, rho).rho, apply_to_qumix(g, rho).rho, kTol));
  }
}

TEST_CASE("identity channel") {
  const KrausChannel ch(1, {CMatrix::Identity(2, 2)});
  const Qumix rho = projector(plus_state());
  CHECK(approx_equal(apply_channel(ch, rho).rho, rho.rho, kTol));
  CHECK_THROWS_AS(apply_channel(ch, Qumix::maximally_mixed(2)), std::invalid_argument);
}

TEST_CASE("full depolarizing maps everything to the maximally mixed state") {
  Rng rng(42);
  const KrausChannel ch = depolarizing_channel(1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Qumix rho = random_qumix(rng, 1);
    CHECK(approx_equal(apply_channel(ch, rho).rho, CMatrix::Identity(2, 2) / 2.0, kTol));
  }
}

TEST_CASE("depolarizing channel parameter edge cases") {
  const KrausChannel identity_like = depolarizing_channel(0.0);
  const Qumix rho = projector(ket({1}));
  CHECK(approx_equal(apply_channel(identity_like, rho).rho, rho.rho, kTol));
  CHECK_THROWS_AS(depolarizing_channel(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(depolarizing_channel(1.1), std::invalid_argument);
}

TEST_CASE("depolarizing completeness across the parameter range") {
  for (int i = 0; i <= 19; ++i) {
    const double p = i / 19.0;
    CHECK_NOTHROW(depolarizing_channel(p));  // the constructor checks completeness
    const KrausChannel ch = depolarizing_channel(p);
    CMatrix sum = CMatrix::Zero(2, 2);
    for (const CMatrix& e : ch.kraus_ops) sum += e.adjoint() * e;
    CHECK(approx_equal(sum, CMatrix::Identity(2, 2), kTol));
  }
}

TEST_CASE("depolarizing superoperator is perspective independent") {
  Rng rng(43);
  const double p = 0.37;
  const CMatrix canonical = kraus_to_superoperator(depolarizing_channel(p)).action;
  for (int trial = 0; trial < 20; ++trial) {
    const TruthPerspective t = random_truth_perspective(rng);
    const CMatrix rotated = kraus_to_superoperator(depolarizing_channel(p, t)).action;
    CHECK(frobenius_distance(rotated, canonical) < kTol);
  }
}

TEST_CASE("depolarizing output probability follows the mixing law") {
  // p' = (1 - p) p_I(rho) + p/2
  Rng rng(44);
  const TruthPerspective id = TruthPerspective::identity();
  for (int trial = 0; trial < 50; ++trial) {
    const double p = rng.uniform();
    const Qumix rho = random_qumix(rng, 1);
    const double before = probability(id, rho);
    const double after = probability(id, apply_channel(depolarizing_channel(p), rho));
    CHECK(after == doctest::Approx((1.0 - p) * before + p / 2.0).epsilon(kTol));
  }
}

TEST_CASE("trace preservation checks") {
  CHECK(is_trace_preserving(kraus_to_superoperator(depolarizing_channel(0.8)), kTol));
  CHECK(is_trace_preserving(kraus_to_superoperator(amplitude_damping(0.3)), kTol));
  CHECK(is_trace_preserving(transpose_map(), kTol));

  const SuperOperator halver =
      SuperOperator::from_map(1, [](const CMatrix& a) { return (0.5 * a).eval(); });
  CHECK(!is_trace_preserving(halver, kTol));
}

TEST_CASE("complete positivity checks") {
  CHECK(is_completely_positive(kraus_to_superoperator(depolarizing_channel(0.8)), kTol));
  CHECK(is_completely_positive(kraus_to_superoperator(amplitude_damping(0.3)), kTol));

  const SuperOperator identity_map =
      SuperOperator::from_map(1, [](const CMatrix& a) { return a; });
  CHECK(is_completely_positive(identity_map, kTol));

  CHECK(!is_completely_positive(transpose_map(), kTol));
  CHECK(choi_min_eigenvalue(transpose_map()) == doctest::Approx(-1.0).epsilon(kTol));
}

TEST_CASE("kraus to superoperator identity and round trip") {
  const SuperOperator id_super = kraus_to_superoperator(KrausChannel(1, {CMatrix::Identity(2, 2)}));
  CHECK(approx_equal(id_super.action, CMatrix::Identity(4, 4), kTol));

  // Full depolarizing sends every unit-trace basis combination to I/2.
  const SuperOperator full = kraus_to_superoperator(depolarizing_channel(1.0));
  CMatrix unit = CMatrix::Zero(2, 2);
  unit(0, 0) = 1.0;
  CHECK(approx_equal(full.apply(unit), CMatrix::Identity(2, 2) / 2.0, kTol));
  unit = CMatrix::Zero(2, 2);
  unit(0, 1) = 1.0;  // traceless unit must go to zero
  CHECK(CMatrix(full.apply(unit)).norm() < kTol);

  Rng rng(45);
  for (int trial = 0; trial < 50; ++trial) {
    const double p = rng.uniform();
    const KrausChannel ch = depolarizing_channel(p);
    const SuperOperator s = kraus_to_superoperator(ch);
    const Qumix rho = random_qumix(rng, 1);
    CHECK(approx_equal(s.apply(rho.rho), apply_channel(ch, rho).rho, kTol));
  }
}

TEST_CASE("channels preserve qumix invariants") {
  Rng rng(46);
  for (int trial = 0; trial < 100; ++trial) {
    const double p = rng.uniform();
    const Qumix rho = random_qumix(rng, 1);
    const Qumix out = apply_channel(depolarizing_channel(p), rho);
    CHECK(qumix_invariants_ok(out.rho, kTol));
  }
}

TEST_CASE("depolarizing breaks purity, so it is not a unitary operation") {
  const Qumix pure = projector(ket({1}));
  for (const double p : {0.1, 0.5, 1.0}) {
    const Qumix out = apply_channel(depolarizing_channel(p), pure);
    CHECK(purity(out) < 1.0 - kTol);
  }
}
