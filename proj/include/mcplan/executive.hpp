#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcplan/planner.hpp"
#include "mcplan/sampler.hpp"
#include "mcplan/state.hpp"

namespace mcplan {

/// Source of actual per-step costs during execution. The production source
/// draws from the half-normal environment model; tests can script exact
/// values per plan index.
class CostSource {
 public:
  virtual ~CostSource() = default;
  virtual CostVector actual_cost(const PlanStep& step, int plan_index) = 0;
};

class HalfNormalCostSource final : public CostSource {
 public:
  HalfNormalCostSource(const EnvironmentProfile& profile, RngEngine rng)
      : profile_(profile), rng_(rng) {}

  CostVector actual_cost(const PlanStep& step, int) override {
    return sample_actual_cost(step.c_lo, profile_, rng_);
  }

 private:
  EnvironmentProfile profile_;
  RngEngine rng_;
};

/// Execution semantics per accounting strategy. The mixed-criticality
/// strategy runs the full mode machine (switch, drop, revert); the plain
/// baselines execute every step, with the optimistic baseline escalating to
/// pessimistic replanning on the first optimistic-budget overrun.
struct ExecPolicy {
  bool mode_machine = true;
  bool escalate_on_overrun = false;

  static ExecPolicy for_strategy(AccountingStrategy s) {
    switch (s) {
      case AccountingStrategy::MixedCriticality:
        return {true, false};
      case AccountingStrategy::PessimisticOnly:
        return {false, false};
      case AccountingStrategy::OptimisticOnly:
        return {false, true};
    }
    return {};
  }
};

struct MissionResult {
  bool success = false;
  int objectives_achieved = 0;  // forced to 0 when the mission failed
  int hi_completed = 0;         // completed HI objectives (recharge excluded)
  int lo_completed = 0;
  CostVector final_consumed;
  int mode_switch_count = 0;
  std::vector<TraceEvent> trace;
};

struct WindowResult {
  bool mission_complete = false;
  bool budget_exceeded = false;
  bool overrun_escalation = false;
  size_t next_step = 0;
};

/// Executes plan steps starting at `first_step` until the mission completes,
/// the budget is exceeded, `max_steps` plan steps (executed or dropped) have
/// been processed since the last replan, or an overrun escalation triggers.
/// `consumed_at_adoption` anchors the plan-relative consumption that is
/// compared against each executed step's optimistic bound. max_steps <= 0
/// disables the replan cadence.
WindowResult execute_plan_window(const Scenario& s, const Plan& plan,
                                 size_t first_step, ExecutionState& st,
                                 const CostVector& consumed_at_adoption,
                                 CostSource& costs, const ExecPolicy& policy,
                                 int max_steps);

/// Runs one full mission: plan, execute with the Fig-style mode semantics,
/// replan every `replan_period` processed steps (the system restarts in
/// LO-mode after adopting a plan), until the recharge return completes or the
/// mission fails.
MissionResult run_mission(const Scenario& s, const SearchConfig& cfg,
                          const EnvironmentProfile& profile, int replan_period,
                          RngEngine& rng);

/// Same loop with an injected cost source and planner stream.
MissionResult run_mission_with(const Scenario& s, const SearchConfig& cfg,
                               int replan_period, CostSource& costs,
                               RngEngine& planner_rng);

/// `runs` independent missions with per-run streams derived from base_seed;
/// results are ordered by run index and deterministic regardless of worker
/// scheduling. workers <= 0 selects the hardware concurrency.
std::vector<MissionResult> run_batch(const Scenario& s,
                                     const SearchConfig& cfg,
                                     const EnvironmentProfile& profile,
                                     int runs, uint64_t base_seed,
                                     int replan_period = 2, int workers = 0);

/// Line-delimited trace export with records
/// {step, action_id, event, consumed_duration, consumed_energy, mode}.
std::string trace_to_jsonl(const std::vector<TraceEvent>& trace);

}  // namespace mcplan
