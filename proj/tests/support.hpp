#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qprobe/state_vector.hpp"

namespace qprobe::testing {

// Haar-ish random normalized state from complex Gaussians.
inline StateVector random_state(int num_qubits, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {normal(gen), normal(gen)};
    norm += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amps) a *= scale;
  return StateVector::from_amplitudes(std::move(amps));
}

// Each basis index is marked independently with probability 1/4.
inline MarkedSet random_marked(int num_qubits, std::mt19937_64& gen) {
  std::bernoulli_distribution pick(0.25);
  std::vector<BasisIndex> marked;
  for (BasisIndex i = 0; i < (BasisIndex{1} << num_qubits); ++i) {
    if (pick(gen)) marked.push_back(i);
  }
  return MarkedSet(std::move(marked));
}

inline double max_abs_diff(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// a|i0> + b * sum_{i != i0} |i> with |a|^2 = p and b real positive.
inline StateVector solution_state(int num_qubits, BasisIndex i0, double p) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const double b = std::sqrt((1.0 - p) / static_cast<double>(dim - 1));
  std::vector<Amplitude> amps(dim, Amplitude{b, 0.0});
  amps[i0] = std::sqrt(p);
  return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace qprobe::testing
