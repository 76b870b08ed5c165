#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "qprobe/errors.hpp"
#include "qprobe/grover.hpp"
#include "support.hpp"

using namespace qprobe;
using qprobe::testing::max_abs_diff;

namespace {

// Grover restricted to span{|marked>, |rest>}: the marked amplitude x and the
// common unmarked amplitude y evolve by oracle (x -> -x) then reflection
// about the mean. Long double, no trig.
long double reduced_marked_mass(std::uint64_t size, std::uint64_t t, std::uint64_t r) {
  const long double n = static_cast<long double>(size);
  const long double tt = static_cast<long double>(t);
  long double x = 1.0L / std::sqrt(n);
  long double y = x;
  for (std::uint64_t i = 0; i < r; ++i) {
    x = -x;
    const long double mean = (tt * x + (n - tt) * y) / n;
    x = 2 * mean - x;
    y = 2 * mean - y;
  }
  return tt * x * x;
}

}  // namespace

TEST_SUITE("grover-engine") {
  TEST_CASE("iteration_count") {
    CHECK(iteration_count(4, 1) == 1);
    CHECK(iteration_count(1024, 1) == 25);
    CHECK(iteration_count(8, 0) == 0);
    CHECK(iteration_count(256, 1) == 12);
    CHECK(iteration_count(16, 16) == 0);
    CHECK_THROWS_AS(iteration_count(12, 1), DomainError);
    CHECK_THROWS_AS(iteration_count(1, 1), DomainError);
    CHECK_THROWS_AS(iteration_count(8, 9), DomainError);
  }

  TEST_CASE("success_probability closed form") {
    CHECK(success_probability(4, 1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(success_probability(4, 1, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(success_probability(8, 0, 3) == 0.0);

    const double p256 = success_probability(256, 1, 12);
    CHECK(p256 > 0.999);
    CHECK(p256 < 1.0);
    // sin^2(25 * asin(1/16)), evaluated independently.
    CHECK(std::abs(p256 - 0.9999470421032736) < 1e-12);
    CHECK(std::abs(p256 - static_cast<double>(reduced_marked_mass(256, 1, 12))) < 1e-12);
  }

  TEST_CASE("run_grover at nu = 4 is exact") {
    const auto run = run_grover(2, MarkedSet{3});
    const std::array<Amplitude, 4> expected{0.0, 0.0, 0.0, 1.0};
    CHECK(max_abs_diff(run.state.amplitudes(), expected) < kExactTolerance);
    CHECK(run.stats.iterations == 1);
    CHECK(run.stats.oracle_calls == 1);
    CHECK(std::abs(run.stats.final_success_probability - 1.0) < kExactTolerance);
  }

  TEST_CASE("run_grover with no solutions leaves the uniform state") {
    const auto run = run_grover(3, {});
    CHECK(run.stats.iterations == 0);
    CHECK(run.stats.final_success_probability == 0.0);
    CHECK(max_abs_diff(run.state.amplitudes(), new_uniform(3).amplitudes()) < kExactTolerance);
  }

  TEST_CASE("run_grover k=8 matches the closed form") {
    const auto run = run_grover(8, MarkedSet{170});
    CHECK(run.stats.iterations == 12);
    CHECK(std::abs(run.state.probability(170) - success_probability(256, 1, 12)) <
          kAccumulatedTolerance);
    CHECK(run.stats.final_success_probability == run.state.probability(170));
  }

  TEST_CASE("run_grover propagates range errors") {
    CHECK_THROWS_AS(run_grover(2, MarkedSet{4}), DomainError);
    CHECK_THROWS_AS(run_grover(0, {}), SizeError);
  }

  TEST_CASE("property: closed-form agreement and argmax for k in [2, 12]") {
    std::mt19937_64 gen(4242);
    for (int k = 2; k <= 12; ++k) {
      const std::uint64_t size = std::uint64_t{1} << k;
      for (int rep = 0; rep < 3; ++rep) {
        const BasisIndex target = gen() % size;
        const auto run = run_grover(k, MarkedSet{target});
        const auto r = run.stats.iterations;
        CHECK(r == iteration_count(size, 1));
        CHECK(std::abs(run.stats.final_success_probability - success_probability(size, 1, r)) <
              kAccumulatedTolerance);
        CHECK(std::abs(run.stats.final_success_probability -
                       static_cast<double>(reduced_marked_mass(size, 1, r))) <
              kAccumulatedTolerance);

        BasisIndex argmax = 0;
        for (BasisIndex i = 1; i < size; ++i) {
          if (run.state.probability(i) > run.state.probability(argmax)) argmax = i;
        }
        CHECK(argmax == target);
      }
      CHECK(iteration_count(size, 1) <=
            static_cast<std::uint64_t>(std::ceil(std::numbers::pi / 4.0 * std::sqrt(size))));
    }
  }

  TEST_CASE("property: multi-solution mass follows the closed form") {
    std::mt19937_64 gen(99);
    for (int k = 3; k <= 10; ++k) {
      const std::uint64_t size = std::uint64_t{1} << k;
      const std::uint64_t t = 1 + gen() % 3;
      std::vector<BasisIndex> idx;
      while (idx.size() < t) {
        const BasisIndex i = gen() % size;
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
      }
      const auto run = run_grover(k, MarkedSet(idx));
      CHECK(std::abs(run.stats.final_success_probability -
                     success_probability(size, t, run.stats.iterations)) < kAccumulatedTolerance);
    }
  }

  TEST_CASE("property: empty oracle keeps the uniform state for any iteration count") {
    for (int k = 1; k <= 8; ++k) {
      for (std::uint64_t r : {1, 5, 40}) {
        const auto s = grover_iterate(new_uniform(k), {}, r);
        CHECK(max_abs_diff(s.amplitudes(), new_uniform(k).amplitudes()) < kExactTolerance);
      }
    }
  }
}
