#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qprobe/ledger.hpp"
#include "qprobe/random.hpp"
#include "qprobe/state_vector.hpp"

namespace qprobe {

// How sub-system results are turned into a final answer. `sequential` is the
// undistributed baseline: one system searching all N items.
enum class Strategy { probe, semiclassical_verify, semiclassical_repeat, sequential };

std::string_view to_string(Strategy strategy) noexcept;
// Accepts the short CLI names: probe, verify, repeat, sequential.
std::optional<Strategy> parse_strategy(std::string_view name) noexcept;

inline constexpr std::uint32_t kDefaultRepeatRounds = 3;

struct ExperimentConfig {
  std::uint64_t db_size = 0;
  std::uint64_t num_subsystems = 1;
  // Solution indices in global coordinates.
  MarkedSet global_marked;
  Strategy strategy = Strategy::probe;
  std::uint32_t repeat_rounds = kDefaultRepeatRounds;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;

  std::uint64_t subsystem_size() const noexcept {
    return num_subsystems == 0 ? 0 : db_size / num_subsystems;
  }
};

// Throws ConfigError naming the first violated constraint.
void validate(const ExperimentConfig& config);

// One slice of the global search space.
struct SubsystemDescriptor {
  std::uint32_t id = 0;
  std::uint64_t offset = 0;
  std::uint64_t size = 0;
  MarkedSet local_marked;

  int num_qubits() const noexcept;
};

// Equal power-of-two slices with offsets 0, nu, 2nu, ...; local_marked empty.
std::vector<SubsystemDescriptor> partition(std::uint64_t db_size, std::uint64_t num_subsystems);

// { g - offset : offset <= g < offset + size }
MarkedSet localize_marked(const MarkedSet& global_marked, const SubsystemDescriptor& sub);

struct SubsystemOutcome {
  std::uint32_t id = 0;
  // Set by the probe strategy.
  std::optional<int> probe_bit;
  // Set by the semi-classical strategies (and the sequential baseline).
  std::optional<BasisIndex> reported_local_index;
  CostLedger ledger;
};

struct ProbeRun {
  SubsystemOutcome outcome;
  // Register state after the probe measurement, kept for recovery.
  StateVector retained;
  // Analytic Pr[probe = 1] before sampling.
  double probe_one_probability = 0.0;
};

// Grover, probe composition, boolean oracle, probe measurement.
ProbeRun run_subsystem_probe(const SubsystemDescriptor& sub, Rng& rng);

struct WinnerSearch {
  std::vector<std::uint32_t> ids;
  // OR-tree internal nodes descended through.
  std::uint64_t decision_steps = 0;

  bool found() const noexcept { return !ids.empty(); }
  bool multiple() const noexcept { return ids.size() > 1; }
};

// Locates the set bits of `probe_bits` by descending a balanced OR tree.
WinnerSearch find_winner(std::span<const int> probe_bits);

struct Recovery {
  BasisIndex global_index = 0;
  CostLedger ledger;
};

// Measures the winner's retained register and maps the result to a global
// index. Throws ProtocolError unless the sub-system's probe read 1.
Recovery recover_global(const SubsystemDescriptor& winner, const SubsystemOutcome& outcome,
                        const StateVector& retained, Rng& rng);

struct RunReport {
  Strategy strategy = Strategy::probe;
  std::uint64_t db_size = 0;
  std::uint64_t num_subsystems = 0;
  MarkedSet global_marked;

  std::vector<std::uint32_t> winner_subsystems;
  std::vector<BasisIndex> recovered_global_indices;
  // A result was reported and every reported index is a solution; or no
  // solution exists and nothing was reported.
  bool correct = false;
  // Solutions exist but nothing was reported.
  bool miss = false;

  // Sum of every per-sub-system ledger plus merge_ledger.
  CostLedger total_ledger;
  // Merging-and-decision stage costs only.
  CostLedger merge_ledger;
  // Critical-path Grover iterations: the maximum over sub-systems.
  std::uint64_t iteration_depth = 0;
  std::vector<SubsystemOutcome> per_subsystem;

  std::optional<std::uint32_t> winner_subsystem() const noexcept;
  std::optional<BasisIndex> recovered_global_index() const noexcept;
  bool multiple() const noexcept { return recovered_global_indices.size() > 1; }
};

// Each run_* executes one trial with sub-system i seeded from
// derive_seed(trial_seed, i). The config's strategy must match.
RunReport run_distributed_probe(const ExperimentConfig& config, std::uint64_t trial_seed);
RunReport run_semiclassical_verify(const ExperimentConfig& config, std::uint64_t trial_seed);
RunReport run_semiclassical_repeat(const ExperimentConfig& config, std::uint64_t trial_seed);
RunReport run_sequential(const ExperimentConfig& config, std::uint64_t trial_seed);

// Dispatches on config.strategy with trial seed derive_seed(config.seed, trial_index).
RunReport run_trial(const ExperimentConfig& config, std::uint64_t trial_index);

// All config.trials trials, in trial order. Output does not depend on
// `threads`.
std::vector<RunReport> run_trials(const ExperimentConfig& config, unsigned threads = 1);

}  // namespace qprobe
