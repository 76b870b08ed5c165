#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qprobe/random.hpp"

namespace qprobe {

using Amplitude = std::complex<double>;
using BasisIndex = std::uint64_t;

// Largest register the simulator will allocate (2^24 amplitudes, 256 MiB).
inline constexpr int kMaxQubits = 24;
// Largest register dense_reference_step will expand into a matrix.
inline constexpr int kMaxDenseQubits = 6;

// Absolute tolerance for algebraic identities on normalized states.
inline constexpr double kExactTolerance = 1e-12;
// Tolerance for quantities accumulated over many iterations.
inline constexpr double kAccumulatedTolerance = 1e-9;

// Dense register of `num_qubits` qubits. Amplitudes are indexed by the basis
// integer; the vector always holds 2^num_qubits entries of unit total norm.
class StateVector {
 public:
  // Uniform superposition over 2^k basis states.
  static StateVector uniform(int num_qubits);
  // The computational basis state |index>.
  static StateVector basis(int num_qubits, BasisIndex index);
  // Takes ownership of explicit amplitudes. The length must be a power of
  // two >= 2 and the norm must be 1 within kExactTolerance.
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }

  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  std::span<Amplitude> mutable_amplitudes() noexcept { return amplitudes_; }
  const Amplitude& operator[](BasisIndex i) const { return amplitudes_[i]; }

  // Sum of |amplitude|^2.
  double norm_squared() const noexcept;
  // |amplitude_i|^2.
  double probability(BasisIndex i) const { return std::norm(amplitudes_[i]); }

 private:
  StateVector(int num_qubits, std::vector<Amplitude> amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  int num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

// Solution indices in local register coordinates. Sorted and duplicate-free.
class MarkedSet {
 public:
  MarkedSet() = default;
  MarkedSet(std::initializer_list<BasisIndex> indices);
  explicit MarkedSet(std::vector<BasisIndex> indices);

  std::span<const BasisIndex> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(BasisIndex i) const noexcept;

  // Throws DomainError if any index is >= dimension.
  void check_range(std::size_t dimension) const;

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  friend bool operator==(const MarkedSet&, const MarkedSet&) = default;

 private:
  std::vector<BasisIndex> indices_;
};

// A register of k qubits joined with one probe qubit. The probe is the
// least-significant bit of the joint index: joint = (register << 1) | probe.
class ComposedState {
 public:
  static ComposedState from_joint(int register_qubits, std::vector<Amplitude> joint);

  int register_qubits() const noexcept { return register_qubits_; }
  std::size_t register_dimension() const noexcept { return joint_.size() / 2; }

  std::span<const Amplitude> joint_amplitudes() const noexcept { return joint_; }
  std::span<Amplitude> mutable_joint_amplitudes() noexcept { return joint_; }

  const Amplitude& amplitude(BasisIndex register_index, int probe_bit) const {
    return joint_[(register_index << 1) | static_cast<BasisIndex>(probe_bit & 1)];
  }

  double norm_squared() const noexcept;
  // Total probability of reading the probe as `probe_bit`.
  double probe_probability(int probe_bit) const noexcept;

 private:
  ComposedState(int register_qubits, std::vector<Amplitude> joint)
      : register_qubits_(register_qubits), joint_(std::move(joint)) {}

  int register_qubits_;
  std::vector<Amplitude> joint_;
};

struct MeasurementRecord {
  // Probe bit for a probe measurement; basis index for a register measurement.
  BasisIndex outcome = 0;
  // Born probability of the observed outcome.
  double probability = 0.0;
  int qubits_measured = 0;
};

struct ProbeOutcome {
  MeasurementRecord record;
  // Register state conditioned on the observed probe value, renormalized.
  StateVector post_state;

  int bit() const noexcept { return static_cast<int>(record.outcome); }
};

// Row-major dense complex matrix. Test scaffolding only.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t dimension)
      : dimension_(dimension), data_(dimension * dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }
  Amplitude& operator()(std::size_t row, std::size_t col) { return data_[row * dimension_ + col]; }
  const Amplitude& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dimension_ + col];
  }

  std::vector<Amplitude> apply(std::span<const Amplitude> v) const;
  DenseMatrix adjoint() const;
  DenseMatrix operator*(const DenseMatrix& rhs) const;

 private:
  std::size_t dimension_;
  std::vector<Amplitude> data_;
};

StateVector new_uniform(int num_qubits);

// |x> -> (-1)^f(x) |x>
StateVector apply_phase_oracle(StateVector state, const MarkedSet& marked);

// Inversion about the mean: a_i -> 2<a> - a_i.
StateVector apply_diffusion(StateVector state);

// |psi> (x) |0>
ComposedState compose_with_probe(const StateVector& state);

// |x, q> -> |x, f(x) xor q>
ComposedState apply_boolean_oracle(ComposedState composed, const MarkedSet& marked);

// Measures only the probe qubit and collapses the register onto the
// observed branch.
ProbeOutcome measure_probe(const ComposedState& composed, Rng& rng);

// Measures every register qubit. Returns the sampled basis index.
MeasurementRecord measure_register(const StateVector& state, Rng& rng);

// Explicit (2|s><s| - I) * O for k <= kMaxDenseQubits.
DenseMatrix dense_reference_step(int num_qubits, const MarkedSet& marked);

}  // namespace qprobe
