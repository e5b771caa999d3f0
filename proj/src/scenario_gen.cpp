#include "mcplan/scenario_gen.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mcplan/rng.hpp"

namespace mcplan {

namespace {

constexpr double kHiReward = 0.2;
constexpr double kLoReward = 0.0166;
constexpr double kRechargeReward = 1.0;

}  // namespace

Scenario generate(uint64_t seed, const GeneratorOptions& opts) {
  if (opts.n_targets < 2 || opts.n_hi < 1 || opts.n_hi >= opts.n_targets)
    throw std::invalid_argument("generate: need 1 <= n_hi < n_targets, n_targets >= 2");
  if (opts.grid <= 0.0 || opts.time_budget <= 0.0 || opts.energy_budget <= 0.0)
    throw std::invalid_argument("generate: grid and budgets must be positive");
  if (opts.n_dependencies < 0)
    throw std::invalid_argument("generate: n_dependencies must be >= 0");

  RngEngine rng = RngEngine::derive(seed, 0x5ce9a21);

  Scenario s;
  s.grid_size = opts.grid;
  s.start = {0.0, 0.0};
  s.recharge_site = {opts.grid, opts.grid};
  s.budget = CostVector{opts.time_budget, opts.energy_budget};
  s.rng_seed = seed;
  if (opts.table1_literal) s.unit_costs.move_hi = CostVector{4.0, 0.1};

  const int n_lo = opts.n_targets - opts.n_hi;
  // The published LO reward keeps reward dominance for up to 12 LO targets
  // (sum < 0.2); larger populations scale it down to preserve the invariant.
  const double lo_reward =
      n_lo * kLoReward < kHiReward ? kLoReward : (kHiReward * 0.9) / n_lo;

  std::vector<int> hi_flags(opts.n_targets, 0);
  {
    std::vector<int> index(opts.n_targets);
    for (int i = 0; i < opts.n_targets; ++i) index[i] = i;
    for (int i = 0; i < opts.n_hi; ++i) {
      const size_t j = i + rng.uniform_index(index.size() - i);
      std::swap(index[i], index[j]);
      hi_flags[index[i]] = 1;
    }
  }

  for (int i = 0; i < opts.n_targets; ++i) {
    ActionSpec a;
    a.id = i;
    a.kind = ActionKind::RetrieveData;
    a.location = {rng.next_double() * opts.grid, rng.next_double() * opts.grid};
    a.criticality = hi_flags[i] ? Criticality::HI : Criticality::LO;
    a.reward = hi_flags[i] ? kHiReward : lo_reward;
    s.actions.push_back(a);
  }

  ActionSpec recharge;
  recharge.id = opts.n_targets;
  recharge.kind = ActionKind::RechargeReturn;
  recharge.location = s.recharge_site;
  recharge.criticality = Criticality::HI;
  recharge.reward = kRechargeReward;
  s.actions.push_back(recharge);

  if (opts.n_dependencies > 0) {
    std::vector<int> lo_ids;
    for (const auto& a : s.actions)
      if (a.criticality == Criticality::LO) lo_ids.push_back(a.id);
    if (lo_ids.size() >= 2) {
      for (int e = 0; e < opts.n_dependencies; ++e) {
        // Later LO target depends on an earlier one; acyclic by construction.
        const size_t child = 1 + rng.uniform_index(lo_ids.size() - 1);
        const size_t parent = rng.uniform_index(child);
        auto& deps = s.actions[lo_ids[child]].depends_on;
        if (std::find(deps.begin(), deps.end(), lo_ids[parent]) == deps.end())
          deps.push_back(lo_ids[parent]);
      }
    }
  }

  return s;
}

Scenario generate(uint64_t seed, int n_targets, int n_hi, double grid,
                  double time_budget) {
  GeneratorOptions opts;
  opts.n_targets = n_targets;
  opts.n_hi = n_hi;
  opts.grid = grid;
  opts.time_budget = time_budget;
  return generate(seed, opts);
}

}  // namespace mcplan
