#pragma once

#include <set>
#include <vector>

#include "mcplan/cost.hpp"
#include "mcplan/geometry.hpp"
#include "mcplan/model.hpp"

namespace mcplan {

/// One entry of the mission event log.
struct TraceEvent {
  enum class Kind {
    PlanAdopted,
    Executed,
    DroppedMode,        // LO-action skipped because the system is in HI-mode
    DroppedDependency,  // LO-action skipped because a dependency was dropped
    ModeSwitch,         // LO -> HI
    ModeRevert,         // HI -> LO
    Replan,
    OverrunEscalation,  // optimistic baseline switching to pessimistic plans
    BudgetExceeded,
    NoFeasiblePlan,
  };

  Kind kind;
  int step = 0;        // global step counter across the mission
  int action_id = -1;  // -1 when the event is not tied to an action
  CostVector sampled;  // actual cost drawn for an executed action
  CostVector consumed; // mission-total consumption after the event
  Mode mode = Mode::LO;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

const char* to_string(TraceEvent::Kind k);

/// Mutable runtime state of one mission.
struct ExecutionState {
  Point2 position;
  CostVector consumed;  // actual accumulated, mission-total
  Mode mode = Mode::LO;
  std::set<int> completed;
  std::set<int> dropped;
  int actions_since_replan = 0;
  std::vector<TraceEvent> trace;

  static ExecutionState initial(const Scenario& s) {
    ExecutionState st;
    st.position = s.start;
    return st;
  }
};

}  // namespace mcplan
