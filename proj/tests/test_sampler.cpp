#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mcplan/sampler.hpp"

using namespace mcplan;

TEST_CASE("zero sigma collapses to half the optimistic worst case") {
  RngEngine rng(1);
  const CostVector c_lo{2.0, 0.4};
  const auto profile = EnvironmentProfile::deterministic();
  for (int i = 0; i < 100; ++i) {
    const CostVector actual = sample_actual_cost(c_lo, profile, rng);
    CHECK(actual.duration() == 1.0);
    CHECK(actual.energy() == 0.2);
  }
}

TEST_CASE("samples never fall below half the optimistic worst case") {
  RngEngine rng(2);
  const CostVector c_lo{2.0, 0.4};
  for (const auto profile :
       {EnvironmentProfile::normal(), EnvironmentProfile::exceptional()}) {
    for (int i = 0; i < 20000; ++i) {
      const CostVector actual = sample_actual_cost(c_lo, profile, rng);
      CHECK(actual.duration() >= 1.0);
      CHECK(actual.energy() >= 0.2);
    }
  }
}

TEST_CASE("normal-profile mean approaches the half-normal expectation") {
  RngEngine rng(3);
  const CostVector c_lo{2.0, 2.0};
  const auto profile = EnvironmentProfile::normal();
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += sample_actual_cost(c_lo, profile, rng).duration();
  const double mean = sum / n;
  const double sigma = 2.0 / profile.sigma_divisor;
  const double expected = 1.0 + sigma * std::sqrt(2.0 / std::numbers::pi);
  CHECK(mean == doctest::Approx(expected).epsilon(0.005));
}

TEST_CASE("exceptional-profile overrun probability near its closed form") {
  RngEngine rng(4);
  const CostVector c_lo{3.0, 3.0};
  const auto profile = EnvironmentProfile::exceptional();
  const int n = 200000;
  int overruns = 0;
  for (int i = 0; i < n; ++i) {
    if (sample_actual_cost(c_lo, profile, rng).duration() > 3.0) ++overruns;
  }
  // P(|N(0, sigma)| > 1.5 sigma) = erfc(1.5 / sqrt 2) ~= 0.1336
  const double expected = std::erfc(1.5 / std::sqrt(2.0));
  CHECK(static_cast<double>(overruns) / n ==
        doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("identical seeds give identical sample streams") {
  RngEngine a(99), b(99);
  const CostVector c_lo{5.0, 1.0};
  const auto profile = EnvironmentProfile::exceptional();
  for (int i = 0; i < 1000; ++i) {
    CHECK(sample_actual_cost(c_lo, profile, a) ==
          sample_actual_cost(c_lo, profile, b));
  }
}

TEST_CASE("resources draw independently") {
  // A zero-cost resource stays exactly zero while the other one varies.
  RngEngine rng(5);
  const CostVector c_lo{4.0, 0.0};
  const auto profile = EnvironmentProfile::exceptional();
  double min_d = 1e9, max_d = -1e9;
  for (int i = 0; i < 1000; ++i) {
    const CostVector actual = sample_actual_cost(c_lo, profile, rng);
    CHECK(actual.energy() == 0.0);
    min_d = std::min(min_d, actual.duration());
    max_d = std::max(max_d, actual.duration());
  }
  CHECK(max_d > min_d);
}
