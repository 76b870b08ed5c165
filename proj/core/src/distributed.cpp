#include "qprobe/distributed.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "qprobe/errors.hpp"
#include "qprobe/grover.hpp"

namespace qprobe {
namespace {

bool is_power_of_two(std::uint64_t v) { return std::has_single_bit(v); }

void require_strategy(const ExperimentConfig& config, Strategy expected) {
  validate(config);
  if (config.strategy != expected) {
    throw ConfigError("config strategy is " + std::string(to_string(config.strategy)) +
                      ", expected " + std::string(to_string(expected)));
  }
}

std::vector<SubsystemDescriptor> localized_partition(const ExperimentConfig& config) {
  auto subs = partition(config.db_size, config.num_subsystems);
  for (auto& sub : subs) sub.local_marked = localize_marked(config.global_marked, sub);
  return subs;
}

RunReport make_report(const ExperimentConfig& config, Strategy strategy) {
  RunReport report;
  report.strategy = strategy;
  report.db_size = config.db_size;
  report.num_subsystems = strategy == Strategy::sequential ? 1 : config.num_subsystems;
  report.global_marked = config.global_marked;
  return report;
}

// Fills correctness, totals and depth once winners and recovered indices are set.
void finalize(RunReport& report) {
  const auto& recovered = report.recovered_global_indices;
  if (recovered.empty()) {
    report.correct = report.global_marked.empty();
    report.miss = !report.global_marked.empty();
  } else {
    report.correct = std::all_of(recovered.begin(), recovered.end(), [&](BasisIndex g) {
      return report.global_marked.contains(g);
    });
    report.miss = false;
  }

  report.total_ledger = report.merge_ledger;
  report.iteration_depth = 0;
  for (const auto& sub : report.per_subsystem) {
    report.total_ledger += sub.ledger;
    report.iteration_depth = std::max(report.iteration_depth, sub.ledger.grover_iterations);
  }
}

// Merge-stage stream; sub-system streams use ids 0..M-1.
Rng merge_rng(std::uint64_t trial_seed, std::uint64_t num_subsystems) {
  return Rng(derive_seed(trial_seed, num_subsystems));
}

}  // namespace

std::string_view to_string(Strategy strategy) noexcept {
  switch (strategy) {
    case Strategy::probe:
      return "probe";
    case Strategy::semiclassical_verify:
      return "verify";
    case Strategy::semiclassical_repeat:
      return "repeat";
    case Strategy::sequential:
      return "sequential";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) noexcept {
  if (name == "probe") return Strategy::probe;
  if (name == "verify") return Strategy::semiclassical_verify;
  if (name == "repeat") return Strategy::semiclassical_repeat;
  if (name == "sequential") return Strategy::sequential;
  return std::nullopt;
}

void validate(const ExperimentConfig& config) {
  const auto n = config.db_size;
  const auto m = config.num_subsystems;
  if (n < 2 || !is_power_of_two(n)) throw ConfigError("db-size must be a power of two >= 2");
  if (m < 1 || !is_power_of_two(m)) throw ConfigError("subsystems must be a power of two");
  if (m > n / 2) {
    throw ConfigError("subsystems must divide db-size with at least 2 items per sub-system");
  }
  if (config.subsystem_size() > (std::uint64_t{1} << kMaxQubits)) {
    throw ConfigError("sub-system size exceeds 2^" + std::to_string(kMaxQubits) + " items");
  }
  if (config.strategy == Strategy::sequential && n > (std::uint64_t{1} << kMaxQubits)) {
    throw ConfigError("sequential baseline requires db-size <= 2^" + std::to_string(kMaxQubits));
  }
  if (!config.global_marked.empty() && config.global_marked.indices().back() >= n) {
    throw ConfigError("marked index " + std::to_string(config.global_marked.indices().back()) +
                      " out of range for db-size " + std::to_string(n));
  }
  if (config.trials < 1) throw ConfigError("trials must be at least 1");
  if (config.strategy == Strategy::semiclassical_repeat) {
    const std::uint64_t rounds = config.repeat_rounds;
    if (rounds < 2) throw ConfigError("repeat-rounds must be at least 2");
    if (rounds * rounds >= n) throw ConfigError("repeat-rounds must be below sqrt(db-size)");
  }
}

int SubsystemDescriptor::num_qubits() const noexcept { return std::countr_zero(size); }

std::vector<SubsystemDescriptor> partition(std::uint64_t db_size, std::uint64_t num_subsystems) {
  if (db_size < 2 || !is_power_of_two(db_size)) {
    throw ConfigError("db-size must be a power of two >= 2");
  }
  if (num_subsystems < 1 || !is_power_of_two(num_subsystems)) {
    throw ConfigError("subsystems must be a power of two");
  }
  if (num_subsystems > db_size / 2) {
    throw ConfigError("subsystems must divide db-size with at least 2 items per sub-system");
  }
  const std::uint64_t size = db_size / num_subsystems;
  std::vector<SubsystemDescriptor> subs;
  subs.reserve(num_subsystems);
  for (std::uint64_t id = 0; id < num_subsystems; ++id) {
    subs.push_back(SubsystemDescriptor{static_cast<std::uint32_t>(id), id * size, size, {}});
  }
  return subs;
}

MarkedSet localize_marked(const MarkedSet& global_marked, const SubsystemDescriptor& sub) {
  std::vector<BasisIndex> local;
  for (BasisIndex g : global_marked) {
    if (g >= sub.offset && g - sub.offset < sub.size) local.push_back(g - sub.offset);
  }
  return MarkedSet(std::move(local));
}

ProbeRun run_subsystem_probe(const SubsystemDescriptor& sub, Rng& rng) {
  auto grover = run_grover(sub.num_qubits(), sub.local_marked);
  auto composed = apply_boolean_oracle(compose_with_probe(grover.state), sub.local_marked);
  const double p1 = composed.probe_probability(1);
  auto measured = measure_probe(composed, rng);

  SubsystemOutcome outcome;
  outcome.id = sub.id;
  outcome.probe_bit = measured.bit();
  outcome.ledger.qubits_measured = static_cast<std::uint64_t>(measured.record.qubits_measured);
  outcome.ledger.quantum_oracle_calls = grover.stats.oracle_calls + 1;
  outcome.ledger.grover_iterations = grover.stats.iterations;
  return ProbeRun{std::move(outcome), std::move(measured.post_state), p1};
}

WinnerSearch find_winner(std::span<const int> probe_bits) {
  WinnerSearch result;
  if (probe_bits.empty()) return result;

  // levels[0] holds the leaves padded to a power of two; levels.back() is the root.
  std::vector<std::vector<std::uint8_t>> levels;
  levels.emplace_back(std::bit_ceil(probe_bits.size()), 0);
  for (std::size_t i = 0; i < probe_bits.size(); ++i) levels[0][i] = probe_bits[i] != 0;
  while (levels.back().size() > 1) {
    const auto& below = levels.back();
    std::vector<std::uint8_t> above(below.size() / 2);
    for (std::size_t i = 0; i < above.size(); ++i) above[i] = below[2 * i] | below[2 * i + 1];
    levels.push_back(std::move(above));
  }
  if (!levels.back()[0]) return result;

  // Depth-first descent through set internal nodes, left subtree first.
  struct Node {
    std::size_t level;
    std::size_t index;
  };
  std::vector<Node> stack{{levels.size() - 1, 0}};
  while (!stack.empty()) {
    const Node node = stack.back();
    stack.pop_back();
    if (node.level == 0) {
      result.ids.push_back(static_cast<std::uint32_t>(node.index));
      continue;
    }
    ++result.decision_steps;
    const auto& children = levels[node.level - 1];
    const std::size_t left = 2 * node.index;
    if (children[left + 1]) stack.push_back({node.level - 1, left + 1});
    if (children[left]) stack.push_back({node.level - 1, left});
  }
  return result;
}

Recovery recover_global(const SubsystemDescriptor& winner, const SubsystemOutcome& outcome,
                        const StateVector& retained, Rng& rng) {
  if (outcome.id != winner.id) throw ProtocolError("outcome does not belong to this sub-system");
  if (outcome.probe_bit != 1) {
    throw ProtocolError("recovery requested for sub-system " + std::to_string(winner.id) +
                        " whose probe did not read 1");
  }
  if (retained.dimension() != winner.size) throw ProtocolError("retained register size mismatch");

  const auto record = measure_register(retained, rng);
  Recovery recovery;
  recovery.global_index = winner.offset + record.outcome;
  recovery.ledger.qubits_measured = static_cast<std::uint64_t>(record.qubits_measured);
  return recovery;
}

std::optional<std::uint32_t> RunReport::winner_subsystem() const noexcept {
  if (winner_subsystems.empty()) return std::nullopt;
  return winner_subsystems.front();
}

std::optional<BasisIndex> RunReport::recovered_global_index() const noexcept {
  if (recovered_global_indices.empty()) return std::nullopt;
  return recovered_global_indices.front();
}

RunReport run_distributed_probe(const ExperimentConfig& config, std::uint64_t trial_seed) {
  require_strategy(config, Strategy::probe);
  const auto subs = localized_partition(config);

  // Operation stage: every sub-system independently, own stream.
  std::vector<ProbeRun> runs;
  runs.reserve(subs.size());
  for (const auto& sub : subs) {
    Rng rng(derive_seed(trial_seed, sub.id));
    runs.push_back(run_subsystem_probe(sub, rng));
  }

  // Merging and decision.
  RunReport report = make_report(config, Strategy::probe);
  std::vector<int> bits;
  bits.reserve(runs.size());
  for (const auto& run : runs) {
    bits.push_back(*run.outcome.probe_bit);
    report.per_subsystem.push_back(run.outcome);
  }
  const auto winners = find_winner(bits);
  report.merge_ledger.decision_steps = winners.decision_steps;

  Rng rng = merge_rng(trial_seed, config.num_subsystems);
  for (std::uint32_t id : winners.ids) {
    const auto recovery = recover_global(subs[id], runs[id].outcome, runs[id].retained, rng);
    report.merge_ledger += recovery.ledger;
    report.winner_subsystems.push_back(id);
    report.recovered_global_indices.push_back(recovery.global_index);
  }
  finalize(report);
  return report;
}

RunReport run_semiclassical_verify(const ExperimentConfig& config, std::uint64_t trial_seed) {
  require_strategy(config, Strategy::semiclassical_verify);
  const auto subs = localized_partition(config);
  RunReport report = make_report(config, Strategy::semiclassical_verify);

  for (const auto& sub : subs) {
    Rng rng(derive_seed(trial_seed, sub.id));
    const auto grover = run_grover(sub.num_qubits(), sub.local_marked);
    const auto record = measure_register(grover.state, rng);

    SubsystemOutcome outcome;
    outcome.id = sub.id;
    outcome.reported_local_index = record.outcome;
    outcome.ledger.qubits_measured = static_cast<std::uint64_t>(record.qubits_measured);
    outcome.ledger.quantum_oracle_calls = grover.stats.oracle_calls;
    outcome.ledger.grover_iterations = grover.stats.iterations;
    report.per_subsystem.push_back(outcome);
  }

  // Classical predicate f on each global candidate.
  for (const auto& outcome : report.per_subsystem) {
    const BasisIndex candidate = subs[outcome.id].offset + *outcome.reported_local_index;
    ++report.merge_ledger.classical_oracle_calls;
    if (config.global_marked.contains(candidate)) {
      report.winner_subsystems.push_back(outcome.id);
      report.recovered_global_indices.push_back(candidate);
    }
  }
  finalize(report);
  return report;
}

RunReport run_semiclassical_repeat(const ExperimentConfig& config, std::uint64_t trial_seed) {
  require_strategy(config, Strategy::semiclassical_repeat);
  const auto subs = localized_partition(config);
  const std::uint64_t rounds = config.repeat_rounds;
  RunReport report = make_report(config, Strategy::semiclassical_repeat);

  for (const auto& sub : subs) {
    Rng rng(derive_seed(trial_seed, sub.id));
    // Every round evolves the same deterministic state, so it is computed once
    // and measured `rounds` times.
    const auto grover = run_grover(sub.num_qubits(), sub.local_marked);

    SubsystemOutcome outcome;
    outcome.id = sub.id;
    std::optional<BasisIndex> first;
    bool agree = true;
    for (std::uint64_t round = 0; round < rounds; ++round) {
      const auto record = measure_register(grover.state, rng);
      outcome.ledger.qubits_measured += static_cast<std::uint64_t>(record.qubits_measured);
      if (!first) {
        first = record.outcome;
      } else if (*first != record.outcome) {
        agree = false;
      }
    }
    outcome.ledger.quantum_oracle_calls = rounds * grover.stats.oracle_calls;
    outcome.ledger.grover_iterations = rounds * grover.stats.iterations;
    if (agree) outcome.reported_local_index = first;
    report.per_subsystem.push_back(outcome);
  }

  for (const auto& outcome : report.per_subsystem) {
    if (!outcome.reported_local_index) continue;
    report.winner_subsystems.push_back(outcome.id);
    report.recovered_global_indices.push_back(subs[outcome.id].offset +
                                              *outcome.reported_local_index);
  }
  finalize(report);
  return report;
}

RunReport run_sequential(const ExperimentConfig& config, std::uint64_t trial_seed) {
  require_strategy(config, Strategy::sequential);
  RunReport report = make_report(config, Strategy::sequential);

  Rng rng(derive_seed(trial_seed, 0));
  const int qubits = std::countr_zero(config.db_size);
  const auto grover = run_grover(qubits, config.global_marked);
  const auto record = measure_register(grover.state, rng);

  SubsystemOutcome outcome;
  outcome.id = 0;
  outcome.reported_local_index = record.outcome;
  outcome.ledger.qubits_measured = static_cast<std::uint64_t>(record.qubits_measured);
  outcome.ledger.quantum_oracle_calls = grover.stats.oracle_calls;
  outcome.ledger.grover_iterations = grover.stats.iterations;
  report.per_subsystem.push_back(outcome);

  report.winner_subsystems.push_back(0);
  report.recovered_global_indices.push_back(record.outcome);
  finalize(report);
  return report;
}

RunReport run_trial(const ExperimentConfig& config, std::uint64_t trial_index) {
  const std::uint64_t trial_seed = derive_seed(config.seed, trial_index);
  switch (config.strategy) {
    case Strategy::probe:
      return run_distributed_probe(config, trial_seed);
    case Strategy::semiclassical_verify:
      return run_semiclassical_verify(config, trial_seed);
    case Strategy::semiclassical_repeat:
      return run_semiclassical_repeat(config, trial_seed);
    case Strategy::sequential:
      return run_sequential(config, trial_seed);
  }
  throw InvariantError("unhandled strategy");
}

std::vector<RunReport> run_trials(const ExperimentConfig& config, unsigned threads) {
  validate(config);
  std::vector<RunReport> reports(config.trials);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(threads, 1U), config.trials));

  if (workers == 1) {
    for (std::uint64_t t = 0; t < config.trials; ++t) reports[t] = run_trial(config, t);
    return reports;
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::uint64_t t = next++; t < config.trials; t = next++) {
      try {
        reports[t] = run_trial(config, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.trials;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return reports;
}

}  // namespace qprobe
