#pragma once

#include <limits>

#include "mcplan/cost.hpp"
#include "mcplan/rng.hpp"

namespace mcplan {

/// Stochastic environment regime. sigma(action, r) = C(LO)[r] / sigma_divisor
/// per resource; the exceptional regime triples the spread, pushing actual
/// costs past their optimistic worst case far more often.
struct EnvironmentProfile {
  enum class Kind { Normal, Exceptional };

  Kind kind = Kind::Normal;
  double sigma_divisor = 10.0;

  static EnvironmentProfile normal() { return {Kind::Normal, 10.0}; }
  static EnvironmentProfile exceptional() { return {Kind::Exceptional, 3.0}; }
  /// Degenerate profile with sigma = 0: every sample is exactly c_lo / 2.
  static EnvironmentProfile deterministic() {
    return {Kind::Normal, std::numeric_limits<double>::infinity()};
  }

  const char* name() const {
    return kind == Kind::Normal ? "normal" : "exceptional";
  }
};

/// Samples the actual cost of one action execution. Per resource,
/// independently:
///   actual[r] = c_lo[r]/2 + |N(0, (c_lo[r]/sigma_divisor)^2)|
/// The support is bounded below by half the optimistic worst case and is
/// unbounded above, so actual costs exceeding C(HI) are possible (rare).
CostVector sample_actual_cost(const CostVector& c_lo,
                              const EnvironmentProfile& profile,
                              RngEngine& rng);

}  // namespace mcplan
