#include "mcplan/executive.hpp"

#include <atomic>
#include <thread>

#include "mcplan/numfmt.hpp"

namespace mcplan {

const char* to_string(TraceEvent::Kind k) {
  using Kind = TraceEvent::Kind;
  switch (k) {
    case Kind::PlanAdopted:
      return "plan_adopted";
    case Kind::Executed:
      return "executed";
    case Kind::DroppedMode:
      return "dropped_mode";
    case Kind::DroppedDependency:
      return "dropped_dependency";
    case Kind::ModeSwitch:
      return "mode_switch";
    case Kind::ModeRevert:
      return "mode_revert";
    case Kind::Replan:
      return "replan";
    case Kind::OverrunEscalation:
      return "overrun_escalation";
    case Kind::BudgetExceeded:
      return "budget_exceeded";
    case Kind::NoFeasiblePlan:
      return "no_feasible_plan";
  }
  return "?";
}

namespace {

int steps_processed(const ExecutionState& st) {
  int n = 0;
  for (const auto& e : st.trace) {
    if (e.kind == TraceEvent::Kind::Executed ||
        e.kind == TraceEvent::Kind::DroppedMode ||
        e.kind == TraceEvent::Kind::DroppedDependency)
      ++n;
  }
  return n;
}

void push_event(ExecutionState& st, TraceEvent::Kind kind, int action_id,
                const CostVector& sampled) {
  TraceEvent e;
  e.kind = kind;
  e.step = steps_processed(st);
  e.action_id = action_id;
  e.sampled = sampled;
  e.consumed = st.consumed;
  e.mode = st.mode;
  st.trace.push_back(e);
}

}  // namespace

WindowResult execute_plan_window(const Scenario& s, const Plan& plan,
                                 size_t first_step, ExecutionState& st,
                                 const CostVector& consumed_at_adoption,
                                 CostSource& costs, const ExecPolicy& policy,
                                 int max_steps) {
  WindowResult w;
  for (size_t i = first_step;; ++i) {
    if (i >= plan.steps.size() ||
        (max_steps > 0 && st.actions_since_replan >= max_steps)) {
      w.next_step = i;
      return w;
    }
    const PlanStep& step = plan.steps[i];
    st.actions_since_replan += 1;

    if (policy.mode_machine && st.mode == Mode::HI &&
        step.action.criticality == Criticality::LO) {
      st.dropped.insert(step.action.id);
      push_event(st, TraceEvent::Kind::DroppedMode, step.action.id, {});
      continue;
    }
    if (policy.mode_machine && step.action.criticality == Criticality::LO) {
      bool dropped_dep = false;
      for (int dep : step.action.depends_on)
        dropped_dep = dropped_dep || st.dropped.count(dep) > 0;
      if (dropped_dep) {
        st.dropped.insert(step.action.id);
        push_event(st, TraceEvent::Kind::DroppedDependency, step.action.id, {});
        continue;
      }
    }

    // Execution is atomic: the sampled cost lands in full, and the mode can
    // only change once the action has completed.
    const CostVector actual = costs.actual_cost(step, static_cast<int>(i));
    st.consumed += actual;
    st.completed.insert(step.action.id);
    st.dropped.erase(step.action.id);
    st.position = step.action.location;
    push_event(st, TraceEvent::Kind::Executed, step.action.id, actual);

    if (any_gt(st.consumed, s.budget)) {
      push_event(st, TraceEvent::Kind::BudgetExceeded, step.action.id, {});
      w.budget_exceeded = true;
      w.next_step = i + 1;
      return w;
    }
    if (step.action.kind == ActionKind::RechargeReturn) {
      w.mission_complete = true;
      w.next_step = i + 1;
      return w;
    }

    const CostVector relative = st.consumed - consumed_at_adoption;
    const Mode decided = switch_decision(relative, step.entry.lo);
    if (policy.mode_machine) {
      if (decided != st.mode) {
        st.mode = decided;
        push_event(st,
                   decided == Mode::HI ? TraceEvent::Kind::ModeSwitch
                                       : TraceEvent::Kind::ModeRevert,
                   step.action.id, {});
      }
    } else if (policy.escalate_on_overrun && decided == Mode::HI) {
      push_event(st, TraceEvent::Kind::OverrunEscalation, step.action.id, {});
      w.overrun_escalation = true;
      w.next_step = i + 1;
      return w;
    }
  }
}

namespace {

MissionResult finish(const Scenario& s, ExecutionState&& st, bool success) {
  MissionResult r;
  r.success = success;
  r.final_consumed = st.consumed;
  for (const auto& a : s.actions) {
    if (a.kind == ActionKind::RechargeReturn || a.reward <= 0.0) continue;
    if (!st.completed.count(a.id)) continue;
    if (a.criticality == Criticality::HI)
      r.hi_completed += 1;
    else
      r.lo_completed += 1;
  }
  if (success) r.objectives_achieved = r.hi_completed + r.lo_completed;
  for (const auto& e : st.trace) {
    if (e.kind == TraceEvent::Kind::ModeSwitch ||
        e.kind == TraceEvent::Kind::OverrunEscalation)
      r.mode_switch_count += 1;
  }
  r.trace = std::move(st.trace);
  return r;
}

}  // namespace

MissionResult run_mission_with(const Scenario& s, const SearchConfig& cfg,
                               int replan_period, CostSource& costs,
                               RngEngine& planner_rng) {
  if (replan_period < 1)
    throw std::invalid_argument("replan_period must be >= 1");

  ExecutionState st = ExecutionState::initial(s);
  SearchConfig active_cfg = cfg;
  ExecPolicy policy = ExecPolicy::for_strategy(active_cfg.strategy);

  Plan current;
  size_t next_step = 0;
  CostVector at_adoption;

  auto adopt = [&](bool via_replan) -> bool {
    try {
      current = plan(s, st, active_cfg, planner_rng);
    } catch (const NoFeasiblePlan&) {
      push_event(st, TraceEvent::Kind::NoFeasiblePlan, -1, {});
      return false;
    }
    st.mode = Mode::LO;  // adopting a plan restarts the system in LO-mode
    st.actions_since_replan = 0;
    next_step = 0;
    at_adoption = st.consumed;
    push_event(st,
               via_replan ? TraceEvent::Kind::Replan
                          : TraceEvent::Kind::PlanAdopted,
               -1, {});
    return true;
  };

  if (!adopt(false)) return finish(s, std::move(st), false);

  for (;;) {
    const WindowResult w =
        execute_plan_window(s, current, next_step, st, at_adoption, costs,
                            policy, replan_period);
    if (w.mission_complete) return finish(s, std::move(st), true);
    if (w.budget_exceeded) return finish(s, std::move(st), false);
    next_step = w.next_step;
    if (w.overrun_escalation) {
      // The optimistic baseline replans immediately after the overrunning
      // action; that replan and every later one assumes pessimistic costs.
      active_cfg.strategy = AccountingStrategy::PessimisticOnly;
      policy = ExecPolicy::for_strategy(active_cfg.strategy);
    }
    if (!adopt(true)) return finish(s, std::move(st), false);
  }
}

MissionResult run_mission(const Scenario& s, const SearchConfig& cfg,
                          const EnvironmentProfile& profile, int replan_period,
                          RngEngine& rng) {
  RngEngine planner_rng(rng.next_u64());
  HalfNormalCostSource costs(profile, RngEngine(rng.next_u64()));
  return run_mission_with(s, cfg, replan_period, costs, planner_rng);
}

std::vector<MissionResult> run_batch(const Scenario& s,
                                     const SearchConfig& cfg,
                                     const EnvironmentProfile& profile,
                                     int runs, uint64_t base_seed,
                                     int replan_period, int workers) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  std::vector<MissionResult> results(runs);

  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, runs));

  std::atomic<int> cursor{0};
  auto work = [&] {
    for (;;) {
      const int i = cursor.fetch_add(1);
      if (i >= runs) return;
      RngEngine rng = RngEngine::derive(base_seed, static_cast<uint64_t>(i));
      results[i] = run_mission(s, cfg, profile, replan_period, rng);
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return results;
}

std::string trace_to_jsonl(const std::vector<TraceEvent>& trace) {
  std::string out;
  for (const auto& e : trace) {
    out += "{\"step\":" + std::to_string(e.step);
    out += ",\"action_id\":" + std::to_string(e.action_id);
    out += ",\"event\":\"" + std::string(to_string(e.kind)) + "\"";
    out += ",\"consumed_duration\":" + format_double(e.consumed.duration());
    out += ",\"consumed_energy\":" + format_double(e.consumed.energy());
    out += ",\"mode\":\"" + std::string(to_string(e.mode)) + "\"}\n";
  }
  return out;
}

}  // namespace mcplan
