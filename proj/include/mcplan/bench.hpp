#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mcplan/executive.hpp"
#include "mcplan/planner.hpp"
#include "mcplan/sampler.hpp"
#include "mcplan/scenario_gen.hpp"

namespace mcplan {

/// The three experiment families driven by the CLI:
///   PessimisticBaseline: pessimistic plain search vs mixed-criticality,
///                        normal environment, time-budget sweep.
///   OptimisticBaseline:  optimistic plain search (with pessimistic
///                        escalation on overrun) vs mixed-criticality,
///                        exceptional environment, time-budget sweep.
///   ComputationSweep:    fixed time budget, computation-budget sweep,
///                        normal environment.
enum class ExperimentKind {
  PessimisticBaseline,
  OptimisticBaseline,
  ComputationSweep
};

const char* to_string(ExperimentKind k);

struct ExperimentSpec {
  ExperimentKind experiment = ExperimentKind::PessimisticBaseline;
  int scenarios = 10;
  int runs_per_scenario = 30;
  /// Swept mission time budgets. Empty selects `auto_budget_count` evenly
  /// spaced budgets between "barely admits the recharge return" and "admits
  /// every objective under pessimistic costs" for the generated scenario set.
  std::vector<double> time_budgets;
  std::vector<int> computation_budgets = {10, 30, 100, 300, 600, 1000};
  EnvironmentProfile profile = EnvironmentProfile::normal();
  int replan_period = 2;
  uint64_t seed = 0;
  int n_targets = 15;
  int n_hi = 4;
  double grid = 100.0;
  int computation_budget = 600;   // fixed while sweeping time budgets
  double sweep_time_budget = 600.0;  // fixed while sweeping computation
  int horizon = 5;
  double exploration_c = 0.5;
  bool table1_literal = false;
  int auto_budget_count = 8;
  int workers = 0;
};

struct RunRecord {
  AccountingStrategy strategy;
  double time_budget = 0.0;
  int computation_budget = 0;
  int scenario_id = 0;
  int run_id = 0;
  bool success = false;
  int objectives = 0;
  int hi_completed = 0;
  int lo_completed = 0;
  int mode_switches = 0;
  CostVector consumed;
};

struct ResultTable {
  ExperimentKind experiment = ExperimentKind::PessimisticBaseline;
  std::vector<RunRecord> rows;
};

struct SummaryRow {
  ExperimentKind experiment;
  AccountingStrategy strategy;
  double time_budget;
  int computation_budget;
  int runs;
  double mean_objectives;
  double stderr_objectives;
  double success_rate;
};

/// Scenario population used by an experiment, derived from its seed.
std::vector<Scenario> experiment_scenarios(const ExperimentSpec& spec);

/// Evenly spaced default time-budget axis for a scenario set: the smallest
/// value barely admits the recharge return under pessimistic costs, the
/// largest admits a full pessimistic nearest-neighbour tour of all targets.
std::vector<double> default_time_budgets(const std::vector<Scenario>& set,
                                         int count);

/// Runs the full strategy x sweep x scenario x run matrix. Deterministic in
/// (spec, seed): identical calls produce identical tables.
ResultTable run_experiment(const ExperimentSpec& spec);

/// Per-(strategy, swept point) mean, standard error and success rate, a pure
/// fold over the detailed rows.
std::vector<SummaryRow> aggregate(const ResultTable& table);

std::string detailed_csv(const ResultTable& table);
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// Writes runs.csv and summary.csv under out_dir (created if needed).
void emit_csv(const ResultTable& table, const std::filesystem::path& out_dir);

}  // namespace mcplan
