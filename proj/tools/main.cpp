#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcplan/bench.hpp"
#include "mcplan/executive.hpp"
#include "mcplan/numfmt.hpp"
#include "mcplan/planner.hpp"
#include "mcplan/scenario_gen.hpp"
#include "mcplan/scenario_io.hpp"

namespace {

using namespace mcplan;

AccountingStrategy parse_strategy(const std::string& name) {
  if (name == "mc" || name == "mixed" || name == "mixed_criticality")
    return AccountingStrategy::MixedCriticality;
  if (name == "pessimistic") return AccountingStrategy::PessimisticOnly;
  if (name == "optimistic") return AccountingStrategy::OptimisticOnly;
  throw CLI::ValidationError("strategy",
                             "expected mc, pessimistic or optimistic");
}

EnvironmentProfile parse_profile(const std::string& name) {
  if (name == "normal") return EnvironmentProfile::normal();
  if (name == "exceptional") return EnvironmentProfile::exceptional();
  throw CLI::ValidationError("profile", "expected normal or exceptional");
}

ExperimentKind parse_experiment(const std::string& name) {
  if (name == "pessimistic") return ExperimentKind::PessimisticBaseline;
  if (name == "optimistic") return ExperimentKind::OptimisticBaseline;
  if (name == "comp-sweep" || name == "sweep")
    return ExperimentKind::ComputationSweep;
  throw CLI::ValidationError(
      "experiment", "expected pessimistic, optimistic or comp-sweep");
}

int report_violations(const Scenario& s) {
  const auto violations = validate_scenario(s);
  for (const auto& v : violations) {
    std::cerr << "invalid scenario [" << v.rule << "] " << v.detail;
    if (!v.action_ids.empty()) {
      std::cerr << " (actions:";
      for (int id : v.action_ids) std::cerr << ' ' << id;
      std::cerr << ')';
    }
    std::cerr << '\n';
  }
  return violations.empty() ? 0 : 1;
}

void print_plan(const Plan& p) {
  std::cout << "step,action_id,kind,criticality,reward,"
               "b_lo_duration,b_lo_energy,b_hi_duration,b_hi_energy\n";
  for (size_t i = 0; i < p.steps.size(); ++i) {
    const PlanStep& st = p.steps[i];
    std::cout << i << ',' << st.action.id << ',' << to_string(st.action.kind)
              << ',' << to_string(st.action.criticality) << ','
              << format_double(st.action.reward) << ','
              << format_double(st.entry.lo.duration()) << ','
              << format_double(st.entry.lo.energy()) << ','
              << format_double(st.entry.hi.duration()) << ','
              << format_double(st.entry.hi.energy()) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-criticality mission planning and benchmark harness"};
  app.require_subcommand(1);

  // ---- generate ----
  auto* gen = app.add_subcommand("generate", "Generate a random scenario file");
  uint64_t gen_seed = 1;
  GeneratorOptions gen_opts;
  std::string gen_out = "scenario.json";
  int gen_count = 1;
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--targets", gen_opts.n_targets, "Number of data targets");
  gen->add_option("--hi", gen_opts.n_hi, "Number of HI-criticality targets");
  gen->add_option("--grid", gen_opts.grid, "Grid side length");
  gen->add_option("--time-budget", gen_opts.time_budget, "Mission time budget");
  gen->add_option("--energy-budget", gen_opts.energy_budget,
                  "Mission energy budget (percent)");
  gen->add_option("--deps", gen_opts.n_dependencies,
                  "Random LO->LO dependency edges to add");
  gen->add_flag("--table1-literal", gen_opts.table1_literal,
                "Keep the uncorrected HI move-energy rate");
  gen->add_option("--out", gen_out, "Output file (or directory with --count)");
  gen->add_option("--count", gen_count, "Generate this many scenarios");

  // ---- plan ----
  auto* plan_cmd = app.add_subcommand("plan", "Build a plan for a scenario");
  std::string plan_scenario;
  std::string plan_strategy = "mc";
  SearchConfig plan_cfg;
  uint64_t plan_seed = 1;
  std::string plan_out;
  plan_cmd->add_option("--scenario", plan_scenario, "Scenario file")
      ->required();
  plan_cmd->add_option("--strategy", plan_strategy,
                       "mc | pessimistic | optimistic");
  plan_cmd->add_option("--comp-budget", plan_cfg.computation_budget,
                       "Search iterations");
  plan_cmd->add_option("--horizon", plan_cfg.horizon, "Rollout horizon");
  plan_cmd->add_option("--exploration", plan_cfg.exploration_c,
                       "UCT exploration constant");
  plan_cmd->add_option("--seed", plan_seed, "Search seed");
  plan_cmd->add_option("--out", plan_out, "Write the plan CSV to this file");

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "Run missions on a scenario");
  std::string sim_scenario;
  std::string sim_strategy = "mc";
  std::string sim_profile = "normal";
  int sim_runs = 1;
  int sim_replan = 2;
  uint64_t sim_seed = 1;
  SearchConfig sim_cfg;
  std::string sim_trace;
  sim->add_option("--scenario", sim_scenario, "Scenario file")->required();
  sim->add_option("--strategy", sim_strategy, "mc | pessimistic | optimistic");
  sim->add_option("--profile", sim_profile, "normal | exceptional");
  sim->add_option("--runs", sim_runs, "Number of missions");
  sim->add_option("--replan-period", sim_replan, "Plan steps between replans");
  sim->add_option("--seed", sim_seed, "Base seed");
  sim->add_option("--comp-budget", sim_cfg.computation_budget,
                  "Search iterations");
  sim->add_option("--horizon", sim_cfg.horizon, "Rollout horizon");
  sim->add_option("--exploration", sim_cfg.exploration_c,
                  "UCT exploration constant");
  sim->add_option("--trace", sim_trace,
                  "Write the first run's event trace (JSON lines) here");

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "Run a benchmark experiment");
  std::string bench_experiment = "pessimistic";
  ExperimentSpec spec;
  std::string bench_profile;
  std::string bench_out = "bench-out";
  bench->add_option("--experiment", bench_experiment,
                    "pessimistic | optimistic | comp-sweep");
  bench->add_option("--scenarios", spec.scenarios, "Scenario count");
  bench->add_option("--runs", spec.runs_per_scenario, "Runs per scenario");
  bench->add_option("--time-budgets", spec.time_budgets,
                    "Swept time budgets (default: auto axis)")
      ->delimiter(',');
  bench->add_option("--comp-budgets", spec.computation_budgets,
                    "Swept computation budgets (comp-sweep)")
      ->delimiter(',');
  bench->add_option("--profile", bench_profile,
                    "normal | exceptional (default per experiment)");
  bench->add_option("--replan-period", spec.replan_period,
                    "Plan steps between replans");
  bench->add_option("--seed", spec.seed, "Experiment seed");
  bench->add_option("--out", bench_out, "Output directory");
  bench->add_option("--targets", spec.n_targets, "Targets per scenario");
  bench->add_option("--hi", spec.n_hi, "HI targets per scenario");
  bench->add_option("--comp-budget", spec.computation_budget,
                    "Fixed computation budget for time-budget sweeps");
  bench->add_option("--sweep-time-budget", spec.sweep_time_budget,
                    "Fixed time budget for the computation sweep");
  bench->add_option("--jobs", spec.workers, "Worker threads (0 = all cores)");
  bench->add_flag("--table1-literal", spec.table1_literal,
                  "Keep the uncorrected HI move-energy rate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (gen_count < 1) throw std::invalid_argument("--count must be >= 1");
      if (gen_count == 1) {
        save_scenario(generate(gen_seed, gen_opts), gen_out);
        std::cout << gen_out << '\n';
      } else {
        std::filesystem::create_directories(gen_out);
        for (int i = 0; i < gen_count; ++i) {
          const uint64_t seed =
              RngEngine::derive(gen_seed, 0x5ce7a110, static_cast<uint64_t>(i))
                  .next_u64();
          const auto path = std::filesystem::path(gen_out) /
                            ("scenario_" + std::to_string(i) + ".json");
          save_scenario(generate(seed, gen_opts), path);
          std::cout << path.string() << '\n';
        }
      }
      return 0;
    }

    if (plan_cmd->parsed()) {
      const Scenario s = load_scenario(plan_scenario);
      if (int rc = report_violations(s); rc != 0) return rc;
      plan_cfg.strategy = parse_strategy(plan_strategy);
      RngEngine rng(plan_seed);
      const Plan p = plan(s, ExecutionState::initial(s), plan_cfg, rng);
      if (!plan_out.empty()) {
        std::ofstream out(plan_out, std::ios::binary);
        std::streambuf* old = std::cout.rdbuf(out.rdbuf());
        print_plan(p);
        std::cout.rdbuf(old);
      } else {
        print_plan(p);
      }
      return 0;
    }

    if (sim->parsed()) {
      const Scenario s = load_scenario(sim_scenario);
      if (int rc = report_violations(s); rc != 0) return rc;
      sim_cfg.strategy = parse_strategy(sim_strategy);
      const EnvironmentProfile profile = parse_profile(sim_profile);
      const auto results =
          run_batch(s, sim_cfg, profile, sim_runs, sim_seed, sim_replan);
      std::cout << "run,success,objectives,hi_completed,lo_completed,"
                   "mode_switches,consumed_duration,consumed_energy\n";
      for (size_t i = 0; i < results.size(); ++i) {
        const MissionResult& r = results[i];
        std::cout << i << ',' << (r.success ? 1 : 0) << ','
                  << r.objectives_achieved << ',' << r.hi_completed << ','
                  << r.lo_completed << ',' << r.mode_switch_count << ','
                  << format_double(r.final_consumed.duration()) << ','
                  << format_double(r.final_consumed.energy()) << '\n';
      }
      if (!sim_trace.empty() && !results.empty()) {
        std::ofstream out(sim_trace, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + sim_trace);
        out << trace_to_jsonl(results.front().trace);
      }
      return 0;
    }

    if (bench->parsed()) {
      spec.experiment = parse_experiment(bench_experiment);
      if (bench_profile.empty()) {
        spec.profile = spec.experiment == ExperimentKind::OptimisticBaseline
                           ? EnvironmentProfile::exceptional()
                           : EnvironmentProfile::normal();
      } else {
        spec.profile = parse_profile(bench_profile);
      }
      const ResultTable table = run_experiment(spec);
      emit_csv(table, bench_out);
      std::cout << (std::filesystem::path(bench_out) / "runs.csv").string()
                << '\n'
                << (std::filesystem::path(bench_out) / "summary.csv").string()
                << '\n';
      return 0;
    }
  } catch (const NoFeasiblePlan& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
