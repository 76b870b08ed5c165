#include "qprobe/grover.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qprobe/errors.hpp"

namespace qprobe {
namespace {

void check_size(std::uint64_t size, std::uint64_t solutions) {
  if (size < 2 || !std::has_single_bit(size)) {
    throw DomainError("search-space size " + std::to_string(size) +
                      " is not a power of two >= 2");
  }
  if (solutions > size) {
    throw DomainError("solution count " + std::to_string(solutions) +
                      " exceeds search-space size " + std::to_string(size));
  }
}

}  // namespace

std::uint64_t iteration_count(std::uint64_t size, std::uint64_t solutions) {
  check_size(size, solutions);
  if (solutions == 0) return 0;
  const double ratio = static_cast<double>(size) / static_cast<double>(solutions);
  return static_cast<std::uint64_t>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

double success_probability(std::uint64_t size, std::uint64_t solutions,
                           std::uint64_t iterations) {
  check_size(size, solutions);
  if (solutions == 0) return 0.0;
  const double theta =
      std::asin(std::sqrt(static_cast<double>(solutions) / static_cast<double>(size)));
  const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
  return s * s;
}

StateVector grover_iterate(StateVector state, const MarkedSet& marked, std::uint64_t iterations) {
  marked.check_range(state.dimension());
  for (std::uint64_t i = 0; i < iterations; ++i) {
    state = apply_diffusion(apply_phase_oracle(std::move(state), marked));
  }
  return state;
}

GroverRun run_grover(int num_qubits, const MarkedSet& marked) {
  auto state = new_uniform(num_qubits);
  marked.check_range(state.dimension());
  const std::uint64_t r = iteration_count(state.dimension(), marked.size());
  state = grover_iterate(std::move(state), marked, r);

  double mass = 0.0;
  for (BasisIndex i : marked) mass += state.probability(i);
  return GroverRun{std::move(state), GroverRunStats{r, r, mass}};
}

}  // namespace qprobe
