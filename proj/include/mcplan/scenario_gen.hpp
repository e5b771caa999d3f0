#pragma once

#include <cstdint>

#include "mcplan/model.hpp"

namespace mcplan {

struct GeneratorOptions {
  int n_targets = 15;
  int n_hi = 4;
  double grid = 100.0;
  double time_budget = 600.0;
  double energy_budget = 60.0;
  /// Number of random LO -> LO dependency edges to add (each later LO target
  /// depending on an earlier one). Default none.
  int n_dependencies = 0;
  /// Keep the published HI move-energy rate (0.1, below the LO rate) instead
  /// of the corrected 0.4. Only useful for fidelity experiments; scenarios
  /// generated with it fail cost-ordering validation.
  bool table1_literal = false;
};

/// Deterministically generates a random mission scenario: start at one grid
/// corner, recharge site at the opposite corner, `n_targets` retrieve-data
/// targets placed uniformly, `n_hi` of them high-criticality (reward 0.2, LO
/// reward 0.0166), plus the mandatory HI recharge-return action (reward 1.0).
Scenario generate(uint64_t seed, const GeneratorOptions& opts = {});

Scenario generate(uint64_t seed, int n_targets, int n_hi, double grid = 100.0,
                  double time_budget = 600.0);

}  // namespace mcplan
