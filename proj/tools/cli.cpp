#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <thread>

#include "qprobe/errors.hpp"

namespace qprobe::cli {
namespace {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw InvariantError("failed to format a double");
  return std::string(buf, end);
}

Json ledger_json(const MeanLedger& m) {
  Json j;
  j["qubits_measured"] = m.qubits_measured;
  j["quantum_oracle_calls"] = m.quantum_oracle_calls;
  j["classical_oracle_calls"] = m.classical_oracle_calls;
  j["grover_iterations"] = m.grover_iterations;
  j["decision_steps"] = m.decision_steps;
  return j;
}

Json config_json(const OutputEnvelope& e) {
  Json marked = Json::array();
  for (auto g : e.config.global_marked) marked.push_back(g);
  Json strategies = Json::array();
  for (auto s : e.strategies) strategies.push_back(std::string(to_string(s)));

  Json j;
  j["db_size"] = e.config.db_size;
  j["subsystems"] = e.config.num_subsystems;
  j["subsystem_size"] = e.config.subsystem_size();
  j["marked"] = std::move(marked);
  j["strategies"] = std::move(strategies);
  j["repeat_rounds"] = e.config.repeat_rounds;
  j["trials"] = e.config.trials;
  return j;
}

Json summary_json(const TrialSummary& s) {
  Json j;
  j["strategy"] = std::string(to_string(s.strategy));
  j["trials"] = s.trials;
  j["successes"] = s.successes;
  j["misses"] = s.misses;
  j["empirical_success_rate"] = s.empirical_success_rate;
  j["mean_iteration_depth"] = s.mean_iteration_depth;
  j["mean_ledger"] = ledger_json(s.mean_ledger);
  return j;
}

Json row_json(const ComparisonRow& r) {
  Json j;
  j["strategy"] = std::string(to_string(r.strategy));
  j["db_size"] = r.db_size;
  j["subsystems"] = r.num_subsystems;
  j["trials"] = r.trials;
  j["success_rate"] = r.success_rate;
  j["misses"] = r.misses;
  j["mean_qubits_measured"] = r.mean_qubits_measured;
  j["mean_quantum_oracle_calls"] = r.mean_quantum_oracle_calls;
  j["mean_classical_oracle_calls"] = r.mean_classical_oracle_calls;
  j["grover_iterations"] = r.grover_iterations;
  j["decision_steps"] = r.decision_steps;
  return j;
}

std::vector<Strategy> expand_strategy(const std::string& name) {
  if (name == "all") {
    return {Strategy::probe, Strategy::semiclassical_verify, Strategy::semiclassical_repeat,
            Strategy::sequential};
  }
  if (auto s = parse_strategy(name)) return {*s};
  throw ConfigError("unknown strategy '" + name +
                    "' (expected probe|verify|repeat|sequential|all)");
}

}  // namespace

std::string_view version() noexcept { return QPROBE_VERSION; }

OutputEnvelope run_experiment(const ExperimentConfig& base, std::span<const Strategy> strategies,
                              unsigned threads) {
  if (strategies.empty()) throw UsageError("no strategies requested");

  // Validate every strategy before running any of them.
  for (auto strategy : strategies) {
    ExperimentConfig config = base;
    config.strategy = strategy;
    validate(config);
  }

  OutputEnvelope envelope;
  envelope.config = base;
  envelope.strategies.assign(strategies.begin(), strategies.end());
  envelope.version = std::string(version());
  envelope.seed = base.seed;
  for (auto strategy : strategies) {
    ExperimentConfig config = base;
    config.strategy = strategy;
    const auto reports = run_trials(config, threads);
    envelope.summaries.push_back(summarize(reports));
  }
  envelope.comparison = compare_strategies(envelope.summaries);
  return envelope;
}

std::string render_json(const OutputEnvelope& envelope) {
  Json summaries = Json::array();
  for (const auto& s : envelope.summaries) summaries.push_back(summary_json(s));
  Json rows = Json::array();
  for (const auto& r : envelope.comparison.rows) rows.push_back(row_json(r));

  Json j;
  j["config"] = config_json(envelope);
  j["summaries"] = std::move(summaries);
  j["comparison"] = std::move(rows);
  j["seed"] = envelope.seed;
  j["version"] = envelope.version;
  return j.dump(2) + "\n";
}

std::string render_csv(const OutputEnvelope& envelope) {
  std::ostringstream os;
  os << "strategy,db_size,subsystems,trials,success_rate,misses,mean_qubits_measured,"
        "mean_quantum_oracle_calls,mean_classical_oracle_calls,grover_iterations,"
        "decision_steps\n";
  for (const auto& r : envelope.comparison.rows) {
    os << to_string(r.strategy) << ',' << r.db_size << ',' << r.num_subsystems << ',' << r.trials
       << ',' << format_double(r.success_rate) << ',' << r.misses << ','
       << format_double(r.mean_qubits_measured) << ','
       << format_double(r.mean_quantum_oracle_calls) << ','
       << format_double(r.mean_classical_oracle_calls) << ','
       << format_double(r.grover_iterations) << ',' << format_double(r.decision_steps) << '\n';
  }
  return os.str();
}

void emit_report(const OutputEnvelope& envelope, Format format, const std::string& path,
                 std::ostream& stdout_stream) {
  if (envelope.summaries.empty()) throw UsageError("envelope has no trial summaries");
  const std::string payload =
      format == Format::json ? render_json(envelope) : render_csv(envelope);

  if (path.empty() || path == "-") {
    stdout_stream << payload;
    stdout_stream.flush();
    if (!stdout_stream) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << payload;
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed Grover search with quantum probes: seeded trial runner", "qprobe"};

  std::uint64_t db_size = 0;
  std::uint64_t subsystems = 1;
  std::vector<std::uint64_t> marked;
  std::string strategy = "probe";
  std::uint32_t repeat_rounds = kDefaultRepeatRounds;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out_path;
  unsigned threads = 1;

  app.add_option("--db-size", db_size, "Database size N (power of two)")->required();
  app.add_option("--subsystems", subsystems, "Number of sub-systems M (power of two dividing N)")
      ->capture_default_str();
  app.add_option("--marked", marked, "Marked global indices, comma separated")->delimiter(',');
  app.add_option("--strategy", strategy, "probe|verify|repeat|sequential|all")
      ->capture_default_str();
  app.add_option("--repeat-rounds", repeat_rounds, "Rounds for the repeat strategy")
      ->capture_default_str();
  app.add_option("--trials", trials, "Trials per strategy")->capture_default_str();
  app.add_option("--seed", seed, "Master seed")->required();
  app.add_option("--format", format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Output path (default: standard output)");
  app.add_option("--threads", threads, "Worker threads for trial execution")
      ->capture_default_str();
  app.set_version_flag("--version", std::string(version()));

  std::vector<std::string> argv_storage{"qprobe"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "qprobe: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    ExperimentConfig config;
    config.db_size = db_size;
    config.num_subsystems = subsystems;
    config.global_marked = MarkedSet(marked);
    config.repeat_rounds = repeat_rounds;
    config.trials = trials;
    config.seed = seed;
    const auto strategies = expand_strategy(strategy);
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());

    const auto envelope = run_experiment(config, strategies, threads);
    emit_report(envelope, format == "csv" ? Format::csv : Format::json, out_path, out);
    return kOk;
  } catch (const ConfigError& e) {
    err << "qprobe: " << e.what() << '\n';
    return kConfigError;
  } catch (const UsageError& e) {
    err << "qprobe: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "qprobe: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "qprobe: internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace qprobe::cli
