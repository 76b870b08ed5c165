#pragma once

#include <cstdint>

#include "qprobe/state_vector.hpp"

namespace qprobe {

struct GroverRunStats {
  std::uint64_t iterations = 0;
  // One phase-oracle application per iteration.
  std::uint64_t oracle_calls = 0;
  // Total probability mass on the marked indices after the last iteration.
  double final_success_probability = 0.0;
};

struct GroverRun {
  StateVector state;
  GroverRunStats stats;
};

// floor((pi/4) * sqrt(size / solutions)), or 0 when there are no solutions.
// `size` must be a power of two >= 2 and `solutions` <= size.
std::uint64_t iteration_count(std::uint64_t size, std::uint64_t solutions);

// sin^2((2r + 1) * asin(sqrt(t / size))); 0 when t = 0.
double success_probability(std::uint64_t size, std::uint64_t solutions, std::uint64_t iterations);

// `iterations` rounds of phase oracle followed by diffusion.
StateVector grover_iterate(StateVector state, const MarkedSet& marked, std::uint64_t iterations);

// Grover search from the uniform state with the optimal iteration count.
GroverRun run_grover(int num_qubits, const MarkedSet& marked);

}  // namespace qprobe
