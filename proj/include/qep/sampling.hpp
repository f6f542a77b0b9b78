#pragma once

#include <cstdint>
#include <random>

#include "qep/qcore.hpp"
#include "qep/truthspace.hpp"

// Seeded sampling of states, unitaries and qumixes. The engine is
// std::mt19937_64 (bit-exact across implementations); the uniform and normal
// transforms are spelled out here so a seed pins the whole stream.

namespace qep {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller.
  double normal();

  // Complex with independent standard-normal parts.
  cdouble complex_normal();

 private:
  std::mt19937_64 engine_;
};

// Haar-random pure state (normalized complex Gaussian vector).
Quregister random_quregister(Rng& rng, int n);
Quregister random_qubit(Rng& rng);

// Haar-random unitary (QR of a Ginibre matrix with phase fixing).
CMatrix random_unitary(Rng& rng, Eigen::Index dim);
TruthPerspective random_truth_perspective(Rng& rng);

// Dirichlet(1)-weighted convex combination of Haar-random pure states.
// rank <= 0 selects full rank 2^n.
Qumix random_qumix(Rng& rng, int n, int rank = 0);

}  // namespace qep
