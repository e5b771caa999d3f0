#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcplan/executive.hpp"
#include "mcplan/planner.hpp"
#include "mcplan/scenario_gen.hpp"
#include "mcplan/scenario_io.hpp"

namespace py = pybind11;
using namespace mcplan;

namespace {

AccountingStrategy strategy_from(const std::string& name) {
  if (name == "mc" || name == "mixed_criticality")
    return AccountingStrategy::MixedCriticality;
  if (name == "pessimistic") return AccountingStrategy::PessimisticOnly;
  if (name == "optimistic") return AccountingStrategy::OptimisticOnly;
  throw py::value_error("strategy must be mc, pessimistic or optimistic");
}

EnvironmentProfile profile_from(const std::string& name) {
  if (name == "normal") return EnvironmentProfile::normal();
  if (name == "exceptional") return EnvironmentProfile::exceptional();
  if (name == "deterministic") return EnvironmentProfile::deterministic();
  throw py::value_error("profile must be normal, exceptional or deterministic");
}

SearchConfig make_config(const std::string& strategy, int computation_budget,
                         int horizon, double exploration) {
  SearchConfig cfg;
  cfg.strategy = strategy_from(strategy);
  cfg.computation_budget = computation_budget;
  cfg.horizon = horizon;
  cfg.exploration_c = exploration;
  return cfg;
}

std::vector<std::string> validate_to_strings(const Scenario& s) {
  std::vector<std::string> out;
  for (const auto& v : validate_scenario(s)) {
    std::string line = v.rule + ": " + v.detail;
    for (int id : v.action_ids) line += " #" + std::to_string(id);
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_mcplan, m) {
  m.doc() = "Mixed-criticality mission planning engine";

  py::class_<ActionSpec>(m, "Action")
      .def_readonly("id", &ActionSpec::id)
      .def_property_readonly(
          "kind", [](const ActionSpec& a) { return to_string(a.kind); })
      .def_property_readonly(
          "criticality",
          [](const ActionSpec& a) { return to_string(a.criticality); })
      .def_property_readonly("x",
                             [](const ActionSpec& a) { return a.location.x; })
      .def_property_readonly("y",
                             [](const ActionSpec& a) { return a.location.y; })
      .def_readonly("reward", &ActionSpec::reward)
      .def_readonly("depends_on", &ActionSpec::depends_on);

  py::class_<Scenario>(m, "Scenario")
      .def_property_readonly("grid_size",
                             [](const Scenario& s) { return s.grid_size; })
      .def_property_readonly(
          "time_budget",
          [](const Scenario& s) { return s.budget[Resource::Duration]; })
      .def_property_readonly(
          "energy_budget",
          [](const Scenario& s) { return s.budget[Resource::Energy]; })
      .def_readonly("actions", &Scenario::actions)
      .def_readonly("rng_seed", &Scenario::rng_seed)
      .def("with_time_budget",
           [](const Scenario& s, double budget) {
             Scenario copy = s;
             copy.budget[Resource::Duration] = budget;
             return copy;
           })
      .def("validate", &validate_to_strings)
      .def("to_json", &scenario_to_json)
      .def("save", [](const Scenario& s,
                      const std::string& path) { save_scenario(s, path); })
      .def_static("from_json", &scenario_from_json)
      .def_static("load",
                  [](const std::string& path) { return load_scenario(path); });

  m.def(
      "generate_scenario",
      [](uint64_t seed, int targets, int hi, double grid, double time_budget,
         double energy_budget, int dependencies, bool table1_literal) {
        GeneratorOptions opts;
        opts.n_targets = targets;
        opts.n_hi = hi;
        opts.grid = grid;
        opts.time_budget = time_budget;
        opts.energy_budget = energy_budget;
        opts.n_dependencies = dependencies;
        opts.table1_literal = table1_literal;
        return generate(seed, opts);
      },
      py::arg("seed"), py::arg("targets") = 15, py::arg("hi") = 4,
      py::arg("grid") = 100.0, py::arg("time_budget") = 600.0,
      py::arg("energy_budget") = 60.0, py::arg("dependencies") = 0,
      py::arg("table1_literal") = false);

  py::class_<PlanStep>(m, "PlanStep")
      .def_property_readonly(
          "action_id", [](const PlanStep& s) { return s.action.id; })
      .def_property_readonly(
          "kind", [](const PlanStep& s) { return to_string(s.action.kind); })
      .def_property_readonly(
          "criticality",
          [](const PlanStep& s) { return to_string(s.action.criticality); })
      .def_property_readonly(
          "reward", [](const PlanStep& s) { return s.action.reward; })
      .def_property_readonly(
          "b_lo",
          [](const PlanStep& s) {
            return py::make_tuple(s.entry.lo.duration(), s.entry.lo.energy());
          })
      .def_property_readonly("b_hi", [](const PlanStep& s) {
        return py::make_tuple(s.entry.hi.duration(), s.entry.hi.energy());
      });

  py::class_<Plan>(m, "Plan").def_readonly("steps", &Plan::steps);

  m.def(
      "plan_mission",
      [](const Scenario& s, const std::string& strategy,
         int computation_budget, int horizon, double exploration,
         uint64_t seed) {
        RngEngine rng(seed);
        return plan(s, ExecutionState::initial(s),
                    make_config(strategy, computation_budget, horizon,
                                exploration),
                    rng);
      },
      py::arg("scenario"), py::arg("strategy") = "mc",
      py::arg("computation_budget") = 600, py::arg("horizon") = 5,
      py::arg("exploration") = 0.5, py::arg("seed") = 0);

  py::class_<MissionResult>(m, "MissionResult")
      .def_readonly("success", &MissionResult::success)
      .def_readonly("objectives", &MissionResult::objectives_achieved)
      .def_readonly("hi_completed", &MissionResult::hi_completed)
      .def_readonly("lo_completed", &MissionResult::lo_completed)
      .def_readonly("mode_switches", &MissionResult::mode_switch_count)
      .def_property_readonly(
          "consumed_duration",
          [](const MissionResult& r) { return r.final_consumed.duration(); })
      .def_property_readonly(
          "consumed_energy",
          [](const MissionResult& r) { return r.final_consumed.energy(); })
      .def("trace_jsonl",
           [](const MissionResult& r) { return trace_to_jsonl(r.trace); });

  m.def(
      "run_mission",
      [](const Scenario& s, const std::string& strategy,
         const std::string& profile, int replan_period, int computation_budget,
         int horizon, double exploration, uint64_t seed) {
        RngEngine rng(seed);
        return run_mission(s,
                           make_config(strategy, computation_budget, horizon,
                                       exploration),
                           profile_from(profile), replan_period, rng);
      },
      py::arg("scenario"), py::arg("strategy") = "mc",
      py::arg("profile") = "normal", py::arg("replan_period") = 2,
      py::arg("computation_budget") = 600, py::arg("horizon") = 5,
      py::arg("exploration") = 0.5, py::arg("seed") = 0);

  m.def(
      "run_batch",
      [](const Scenario& s, int runs, uint64_t base_seed,
         const std::string& strategy, const std::string& profile,
         int replan_period, int computation_budget, int horizon,
         double exploration, int workers) {
        return run_batch(s,
                         make_config(strategy, computation_budget, horizon,
                                     exploration),
                         profile_from(profile), runs, base_seed, replan_period,
                         workers);
      },
      py::arg("scenario"), py::arg("runs"), py::arg("base_seed") = 0,
      py::arg("strategy") = "mc", py::arg("profile") = "normal",
      py::arg("replan_period") = 2, py::arg("computation_budget") = 600,
      py::arg("horizon") = 5, py::arg("exploration") = 0.5,
      py::arg("workers") = 0);

  m.def("objective_value", &objective_value, py::arg("reward_sum"),
        py::arg("t"), py::arg("time_budget"));

  py::register_exception<NoFeasiblePlan>(m, "NoFeasiblePlanError");
  py::register_exception<ParseError>(m, "ScenarioParseError");
}
