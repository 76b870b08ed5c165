#pragma once

#include <cstdint>

namespace qprobe {

// Resource counts for one protocol run or one part of it. Offset arithmetic
// is treated as free and never appears here.
struct CostLedger {
  std::uint64_t qubits_measured = 0;
  // Phase-oracle plus boolean-oracle applications.
  std::uint64_t quantum_oracle_calls = 0;
  std::uint64_t classical_oracle_calls = 0;
  std::uint64_t grover_iterations = 0;
  std::uint64_t decision_steps = 0;

  CostLedger& operator+=(const CostLedger& rhs) noexcept {
    qubits_measured += rhs.qubits_measured;
    quantum_oracle_calls += rhs.quantum_oracle_calls;
    classical_oracle_calls += rhs.classical_oracle_calls;
    grover_iterations += rhs.grover_iterations;
    decision_steps += rhs.decision_steps;
    return *this;
  }

  friend CostLedger operator+(CostLedger lhs, const CostLedger& rhs) noexcept { return lhs += rhs; }
  friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

inline CostLedger ledger_add(const CostLedger& a, const CostLedger& b) noexcept { return a + b; }

}  // namespace qprobe
