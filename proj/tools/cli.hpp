#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qprobe/distributed.hpp"
#include "qprobe/metrics.hpp"

namespace qprobe::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kInternalError = 3,
  kIoError = 4,
};

enum class Format { json, csv };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view version() noexcept;

// Everything a run needs to be reproduced, plus its results.
struct OutputEnvelope {
  ExperimentConfig config;
  std::vector<Strategy> strategies;
  std::vector<TrialSummary> summaries;
  ComparisonTable comparison;
  std::string version;
  std::uint64_t seed = 0;
};

// Runs config.trials trials per strategy and aggregates them. `base.strategy`
// is ignored; each entry of `strategies` is validated against `base`.
OutputEnvelope run_experiment(const ExperimentConfig& base, std::span<const Strategy> strategies,
                              unsigned threads = 1);

std::string render_json(const OutputEnvelope& envelope);
std::string render_csv(const OutputEnvelope& envelope);

// Writes to `path`, or standard output when path is empty or "-".
// Throws IoError if the destination can't be written.
void emit_report(const OutputEnvelope& envelope, Format format, const std::string& path,
                 std::ostream& stdout_stream);

// Parses flags (without the program name), runs, and emits. Diagnostics go
// to `err`. Returns one of ExitCode.
int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qprobe::cli
