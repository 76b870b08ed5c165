#include "qprobe/metrics.hpp"

#include <string>

#include "qprobe/errors.hpp"

namespace qprobe {

TrialSummary summarize(std::span<const RunReport> reports) {
  if (reports.empty()) throw UsageError("cannot summarize an empty report list");

  const RunReport& first = reports.front();
  TrialSummary summary;
  summary.strategy = first.strategy;
  summary.db_size = first.db_size;
  summary.num_subsystems = first.num_subsystems;
  summary.global_marked = first.global_marked;

  CostLedger total;
  std::uint64_t depth = 0;
  for (const auto& report : reports) {
    if (report.strategy != first.strategy) {
      throw UsageError("cannot summarize mixed strategies (" +
                       std::string(to_string(first.strategy)) + " and " +
                       std::string(to_string(report.strategy)) + ")");
    }
    if (report.db_size != first.db_size || report.num_subsystems != first.num_subsystems ||
        report.global_marked != first.global_marked) {
      throw UsageError("cannot summarize reports from different configurations");
    }
    ++summary.trials;
    if (report.correct) ++summary.successes;
    if (report.miss) ++summary.misses;
    total += report.total_ledger;
    depth += report.iteration_depth;
  }

  const double n = static_cast<double>(summary.trials);
  summary.mean_ledger = MeanLedger{
      static_cast<double>(total.qubits_measured) / n,
      static_cast<double>(total.quantum_oracle_calls) / n,
      static_cast<double>(total.classical_oracle_calls) / n,
      static_cast<double>(total.grover_iterations) / n,
      static_cast<double>(total.decision_steps) / n,
  };
  summary.mean_iteration_depth = static_cast<double>(depth) / n;
  summary.empirical_success_rate = static_cast<double>(summary.successes) / n;
  return summary;
}

const ComparisonRow* ComparisonTable::find(Strategy strategy) const noexcept {
  for (const auto& row : rows) {
    if (row.strategy == strategy) return &row;
  }
  return nullptr;
}

ComparisonTable compare_strategies(std::span<const TrialSummary> summaries) {
  if (summaries.empty()) throw UsageError("nothing to compare");

  const TrialSummary& first = summaries.front();
  const TrialSummary* distributed = nullptr;
  int sequential = 0;
  for (const auto& s : summaries) {
    if (s.db_size != first.db_size) throw UsageError("cannot compare summaries with different db-size");
    if (s.global_marked != first.global_marked) {
      throw UsageError("cannot compare summaries with different marked sets");
    }
    if (s.strategy == Strategy::sequential) {
      if (++sequential > 1) throw UsageError("at most one sequential baseline");
      continue;
    }
    if (distributed && distributed->num_subsystems != s.num_subsystems) {
      throw UsageError("cannot compare summaries with different sub-system counts");
    }
    distributed = &s;
  }

  ComparisonTable table;
  for (const auto& s : summaries) {
    table.rows.push_back(ComparisonRow{
        s.strategy,
        s.db_size,
        s.num_subsystems,
        s.trials,
        s.empirical_success_rate,
        s.misses,
        s.mean_ledger.qubits_measured,
        s.mean_ledger.quantum_oracle_calls,
        s.mean_ledger.classical_oracle_calls,
        s.mean_iteration_depth,
        s.mean_ledger.decision_steps,
    });
  }
  return table;
}

}  // namespace qprobe
