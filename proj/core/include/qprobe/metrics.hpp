#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qprobe/distributed.hpp"
#include "qprobe/ledger.hpp"

namespace qprobe {

// Per-field averages of a batch of ledgers.
struct MeanLedger {
  double qubits_measured = 0.0;
  double quantum_oracle_calls = 0.0;
  double classical_oracle_calls = 0.0;
  double grover_iterations = 0.0;
  double decision_steps = 0.0;
};

struct TrialSummary {
  Strategy strategy = Strategy::probe;
  std::uint64_t db_size = 0;
  std::uint64_t num_subsystems = 0;
  MarkedSet global_marked;

  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t misses = 0;
  MeanLedger mean_ledger;
  double mean_iteration_depth = 0.0;
  double empirical_success_rate = 0.0;
};

// Reports must be non-empty and share strategy, N, M and marked set.
TrialSummary summarize(std::span<const RunReport> reports);

struct ComparisonRow {
  Strategy strategy = Strategy::probe;
  std::uint64_t db_size = 0;
  std::uint64_t num_subsystems = 0;
  std::uint64_t trials = 0;
  double success_rate = 0.0;
  std::uint64_t misses = 0;
  double mean_qubits_measured = 0.0;
  double mean_quantum_oracle_calls = 0.0;
  double mean_classical_oracle_calls = 0.0;
  // Critical-path iterations, not the sum across sub-systems.
  double grover_iterations = 0.0;
  double decision_steps = 0.0;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;

  const ComparisonRow* find(Strategy strategy) const noexcept;
};

// One row per summary, in input order. All summaries must share N and the
// marked set; distributed ones must also share M. A sequential summary
// is the undistributed baseline and may appear at most once.
ComparisonTable compare_strategies(std::span<const TrialSummary> summaries);

}  // namespace qprobe
