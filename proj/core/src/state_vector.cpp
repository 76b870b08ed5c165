#include "qprobe/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qprobe/errors.hpp"

namespace qprobe {
namespace {

void check_qubits(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw SizeError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                    std::to_string(kMaxQubits) + "]");
  }
}

double sum_norm(std::span<const Amplitude> amplitudes) {
  double total = 0.0;
  for (const auto& a : amplitudes) total += std::norm(a);
  return total;
}

}  // namespace

StateVector StateVector::uniform(int num_qubits) {
  check_qubits(num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  return StateVector(num_qubits, std::vector<Amplitude>(dim, Amplitude{amp, 0.0}));
}

StateVector StateVector::basis(int num_qubits, BasisIndex index) {
  check_qubits(num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) {
    throw DomainError("basis index " + std::to_string(index) + " out of range for " +
                      std::to_string(num_qubits) + " qubits");
  }
  std::vector<Amplitude> amps(dim);
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw SizeError("amplitude count " + std::to_string(dim) + " is not a power of two >= 2");
  }
  const int k = std::countr_zero(dim);
  check_qubits(k);
  const double norm = sum_norm(amplitudes);
  if (std::abs(norm - 1.0) > kExactTolerance) {
    throw DomainError("amplitudes are not normalized (norm^2 = " + std::to_string(norm) + ")");
  }
  return StateVector(k, std::move(amplitudes));
}

double StateVector::norm_squared() const noexcept { return sum_norm(amplitudes_); }

MarkedSet::MarkedSet(std::initializer_list<BasisIndex> indices)
    : MarkedSet(std::vector<BasisIndex>(indices)) {}

MarkedSet::MarkedSet(std::vector<BasisIndex> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool MarkedSet::contains(BasisIndex i) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

void MarkedSet::check_range(std::size_t dimension) const {
  if (!indices_.empty() && indices_.back() >= dimension) {
    throw DomainError("marked index " + std::to_string(indices_.back()) +
                      " out of range for dimension " + std::to_string(dimension));
  }
}

ComposedState ComposedState::from_joint(int register_qubits, std::vector<Amplitude> joint) {
  check_qubits(register_qubits);
  if (joint.size() != (std::size_t{2} << register_qubits)) {
    throw SizeError("joint state must hold 2^(k+1) amplitudes");
  }
  if (std::abs(sum_norm(joint) - 1.0) > kExactTolerance) {
    throw DomainError("joint amplitudes are not normalized");
  }
  return ComposedState(register_qubits, std::move(joint));
}

double ComposedState::norm_squared() const noexcept { return sum_norm(joint_); }

double ComposedState::probe_probability(int probe_bit) const noexcept {
  double p = 0.0;
  for (std::size_t j = static_cast<std::size_t>(probe_bit & 1); j < joint_.size(); j += 2) {
    p += std::norm(joint_[j]);
  }
  return p;
}

std::vector<Amplitude> DenseMatrix::apply(std::span<const Amplitude> v) const {
  if (v.size() != dimension_) throw SizeError("matrix/vector dimension mismatch");
  std::vector<Amplitude> out(dimension_);
  for (std::size_t r = 0; r < dimension_; ++r) {
    Amplitude acc{};
    for (std::size_t c = 0; c < dimension_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix out(dimension_);
  for (std::size_t r = 0; r < dimension_; ++r) {
    for (std::size_t c = 0; c < dimension_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (rhs.dimension_ != dimension_) throw SizeError("matrix dimension mismatch");
  DenseMatrix out(dimension_);
  for (std::size_t r = 0; r < dimension_; ++r) {
    for (std::size_t m = 0; m < dimension_; ++m) {
      const Amplitude lhs = (*this)(r, m);
      for (std::size_t c = 0; c < dimension_; ++c) out(r, c) += lhs * rhs(m, c);
    }
  }
  return out;
}

StateVector new_uniform(int num_qubits) { return StateVector::uniform(num_qubits); }

StateVector apply_phase_oracle(StateVector state, const MarkedSet& marked) {
  marked.check_range(state.dimension());
  auto amps = state.mutable_amplitudes();
  for (BasisIndex i : marked) amps[i] = -amps[i];
  return state;
}

StateVector apply_diffusion(StateVector state) {
  auto amps = state.mutable_amplitudes();
  Amplitude sum{};
  for (const auto& a : amps) sum += a;
  const Amplitude twice_mean = 2.0 * sum / static_cast<double>(amps.size());
  for (auto& a : amps) a = twice_mean - a;
  return state;
}

ComposedState compose_with_probe(const StateVector& state) {
  const auto amps = state.amplitudes();
  std::vector<Amplitude> joint(amps.size() * 2);
  for (std::size_t i = 0; i < amps.size(); ++i) joint[i << 1] = amps[i];
  return ComposedState::from_joint(state.num_qubits(), std::move(joint));
}

ComposedState apply_boolean_oracle(ComposedState composed, const MarkedSet& marked) {
  marked.check_range(composed.register_dimension());
  auto joint = composed.mutable_joint_amplitudes();
  for (BasisIndex i : marked) std::swap(joint[i << 1], joint[(i << 1) | 1]);
  return composed;
}

ProbeOutcome measure_probe(const ComposedState& composed, Rng& rng) {
  const double p0 = composed.probe_probability(0);
  const double p1 = composed.probe_probability(1);
  const double total = p0 + p1;
  if (!(total > 0.0)) throw InvariantError("composed state has zero norm");

  // Inverse CDF over [p0, p1]; scaling by the total keeps a zero-weight
  // branch unreachable under rounding.
  const int bit = rng.uniform() * total < p0 ? 0 : 1;
  const double branch = bit == 0 ? p0 : p1;
  if (!(branch > 0.0)) throw InvariantError("selected probe branch has zero norm");

  const auto joint = composed.joint_amplitudes();
  const double scale = 1.0 / std::sqrt(branch);
  std::vector<Amplitude> post(composed.register_dimension());
  for (std::size_t i = 0; i < post.size(); ++i) post[i] = joint[(i << 1) | bit] * scale;

  return ProbeOutcome{
      MeasurementRecord{static_cast<BasisIndex>(bit), branch / total, 1},
      StateVector::from_amplitudes(std::move(post)),
  };
}

MeasurementRecord measure_register(const StateVector& state, Rng& rng) {
  const auto amps = state.amplitudes();
  const double total = state.norm_squared();
  const double target = rng.uniform() * total;

  // First index whose cumulative weight exceeds the target. Zero-weight
  // entries never raise the running sum, so they can't be selected.
  double cumulative = 0.0;
  std::size_t chosen = amps.size();
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double w = std::norm(amps[i]);
    if (w > 0.0) last_nonzero = i;
    cumulative += w;
    if (cumulative > target) {
      chosen = i;
      break;
    }
  }
  if (chosen == amps.size()) chosen = last_nonzero;

  return MeasurementRecord{chosen, std::norm(amps[chosen]) / total, state.num_qubits()};
}

DenseMatrix dense_reference_step(int num_qubits, const MarkedSet& marked) {
  if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
    throw SizeError("dense reference supports 1.." + std::to_string(kMaxDenseQubits) +
                    " qubits, got " + std::to_string(num_qubits));
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  marked.check_range(dim);
  const double two_over_n = 2.0 / static_cast<double>(dim);
  DenseMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double diffusion = two_over_n - (r == c ? 1.0 : 0.0);
      const double oracle = marked.contains(c) ? -1.0 : 1.0;
      m(r, c) = diffusion * oracle;
    }
  }
  return m;
}

}  // namespace qprobe
