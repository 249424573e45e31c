#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "dqc/circuit.hpp"

namespace dqc {

// Deterministic uniform draws from a 64-bit Mersenne twister.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int index(int k) { return std::min(k - 1, static_cast<int>(uniform() * k)); }
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 eng_;
};

enum class PartitionRule { Half, Explicit };

struct UccSpec {
  int n_qubits = 4;
  std::vector<std::array<int, 2>> singles;
  std::vector<std::array<int, 4>> doubles;
  uint64_t seed = 7;
  PartitionRule rule = PartitionRule::Half;
  std::vector<Side> sides;  // Explicit only

  // Generalized singles over every pair plus every pairing of 4-subsets.
  static UccSpec all(int n, uint64_t seed);
};

struct RandomSpec {
  int n_qubits = 4;
  int depth = 8;
  double p_two_qubit = 0.5;
  uint64_t seed = 1;
  PartitionRule rule = PartitionRule::Half;
  std::vector<Side> sides;
};

Circuit gen_ucc_like(const UccSpec &spec);
Circuit gen_random(const RandomSpec &spec);

CMat random_unitary_2x2(Rng &rng);
CMat random_unitary(Rng &rng, int wires);

}  // namespace dqc
