#include <doctest.h>

#include <cmath>

#include "qprobe/errors.hpp"
#include "qprobe/grover.hpp"
#include "qprobe/metrics.hpp"

using namespace qprobe;

namespace {

ExperimentConfig make_config(std::uint64_t n, std::uint64_t m, MarkedSet marked, Strategy s,
                             std::uint64_t trials, std::uint64_t seed = 1) {
  ExperimentConfig c;
  c.db_size = n;
  c.num_subsystems = m;
  c.global_marked = std::move(marked);
  c.strategy = s;
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_SUITE("metrics-ledger") {
  TEST_CASE("ledger_add") {
    const CostLedger a{4, 13, 0, 12, 2};
    const CostLedger b{2, 1, 4, 3, 1};
    CHECK(ledger_add(a, CostLedger{}) == a);
    CHECK(ledger_add(CostLedger{4}, CostLedger{2}).qubits_measured == 6);
    CHECK(ledger_add(a, b) == ledger_add(b, a));
    const CostLedger c{7, 7, 7, 7, 7};
    CHECK(ledger_add(ledger_add(a, b), c) == ledger_add(a, ledger_add(b, c)));
  }

  TEST_CASE("summarize counts successes and averages ledgers") {
    const auto reports = run_trials(make_config(16, 4, {10}, Strategy::probe, 10));
    const auto s = summarize(reports);
    CHECK(s.trials == 10);
    CHECK(s.successes == 10);
    CHECK(s.misses == 0);
    CHECK(s.empirical_success_rate == 1.0);
    CHECK(s.mean_ledger.qubits_measured == 6.0);
    CHECK(s.mean_ledger.decision_steps == 2.0);
    CHECK(s.mean_iteration_depth == 1.0);
  }

  TEST_CASE("summarize rejects empty and mixed input") {
    CHECK_THROWS_AS(summarize({}), UsageError);

    auto reports = run_trials(make_config(16, 4, {10}, Strategy::probe, 2));
    const auto verify = run_trials(make_config(16, 4, {10}, Strategy::semiclassical_verify, 1));
    reports.push_back(verify.front());
    CHECK_THROWS_AS(summarize(reports), UsageError);

    auto other = run_trials(make_config(16, 4, {10}, Strategy::probe, 2));
    other.push_back(run_trials(make_config(32, 4, {10}, Strategy::probe, 1)).front());
    CHECK_THROWS_AS(summarize(other), UsageError);
  }

  TEST_CASE("summarize: probe success rate tracks the closed form at nu = 256") {
    // N = 256, M = 1: one sub-system of nu = 256 with t = 1.
    const auto s = summarize(run_trials(make_config(256, 1, {99}, Strategy::probe, 1000, 17)));
    CHECK(std::abs(s.empirical_success_rate - success_probability(256, 1, 12)) <= 0.01);
    CHECK(s.successes + s.misses <= s.trials);
  }

  TEST_CASE("compare_strategies reproduces the cost columns") {
    std::vector<TrialSummary> summaries;
    for (Strategy st : {Strategy::probe, Strategy::semiclassical_verify, Strategy::sequential}) {
      summaries.push_back(summarize(run_trials(make_config(1024, 4, {777}, st, 20))));
    }
    const auto table = compare_strategies(summaries);
    REQUIRE(table.rows.size() == 3);
    const auto* probe = table.find(Strategy::probe);
    const auto* verify = table.find(Strategy::semiclassical_verify);
    const auto* sequential = table.find(Strategy::sequential);
    REQUIRE(probe);
    REQUIRE(verify);
    REQUIRE(sequential);
    if (probe->success_rate == 1.0) CHECK(probe->mean_qubits_measured == 12.0);
    CHECK(verify->mean_qubits_measured == 32.0);
    CHECK(verify->mean_classical_oracle_calls == 4.0);
    CHECK(sequential->grover_iterations == 25.0);
    CHECK(probe->grover_iterations == 12.0);
    CHECK(probe->decision_steps == 2.0);
    CHECK(table.find(Strategy::semiclassical_repeat) == nullptr);
  }

  TEST_CASE("compare_strategies rejects incompatible summaries") {
    const auto a = summarize(run_trials(make_config(1024, 4, {777}, Strategy::probe, 2)));
    const auto b =
        summarize(run_trials(make_config(512, 4, {77}, Strategy::semiclassical_verify, 2)));
    CHECK_THROWS_AS(compare_strategies(std::vector{a, b}), UsageError);

    const auto c =
        summarize(run_trials(make_config(1024, 8, {777}, Strategy::semiclassical_verify, 2)));
    CHECK_THROWS_AS(compare_strategies(std::vector{a, c}), UsageError);

    const auto d = summarize(run_trials(make_config(1024, 4, {5}, Strategy::probe, 2)));
    CHECK_THROWS_AS(compare_strategies(std::vector{a, d}), UsageError);

    CHECK_THROWS_AS(compare_strategies({}), UsageError);
  }

  TEST_CASE("property: closed-form qubit counts and iteration depth") {
    for (std::uint64_t n : {64, 256, 1024}) {
      for (std::uint64_t m : {2, 4, 8}) {
        const std::uint64_t nu = n / m;
        const std::uint64_t k = static_cast<std::uint64_t>(std::log2(nu));
        for (Strategy st : {Strategy::probe, Strategy::semiclassical_verify,
                            Strategy::semiclassical_repeat}) {
          for (const auto& r : run_trials(make_config(n, m, {n / 3}, st, 20, n + m))) {
            switch (st) {
              case Strategy::probe:
                CHECK(r.total_ledger.qubits_measured == (r.miss ? m : m + k));
                break;
              case Strategy::semiclassical_verify:
                CHECK(r.total_ledger.qubits_measured == m * k);
                break;
              default:
                CHECK(r.total_ledger.qubits_measured == m * 3 * k);
            }
            if (st != Strategy::semiclassical_repeat) {
              CHECK(r.iteration_depth == iteration_count(nu, 1));
              CHECK(r.iteration_depth <= iteration_count(n, 1));
            }
          }
        }
      }
    }
  }
}
