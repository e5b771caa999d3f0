#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcplan/cost.hpp"
#include "mcplan/geometry.hpp"

namespace mcplan {

/// Designer-assigned importance of an action. HI-actions must execute in any
/// runtime mode; LO-actions only run while the system is in LO-mode.
enum class Criticality { LO, HI };

/// Runtime criticality mode of the executive. Missions start in LO.
enum class Mode { LO, HI };

enum class ActionKind { Reach, RetrieveData, RechargeReturn };

const char* to_string(Criticality c);
const char* to_string(Mode m);
const char* to_string(ActionKind k);

struct ActionSpec {
  int id = 0;
  ActionKind kind = ActionKind::RetrieveData;
  Point2 location;
  Criticality criticality = Criticality::LO;
  double reward = 0.0;
  std::vector<int> depends_on;

  friend bool operator==(const ActionSpec&, const ActionSpec&) = default;
};

/// Per-unit and fixed worst-case costs, in optimistic (LO) and pessimistic
/// (HI) variants. Move costs scale with euclidean distance; retrieve and
/// recharge costs are fixed per execution.
struct UnitCosts {
  CostVector move_lo{2.0, 0.2};
  CostVector move_hi{4.0, 0.4};  // HI move energy defaults to 2x LO
  CostVector retrieve_lo{5.0, 1.0};
  CostVector retrieve_hi{10.0, 2.0};
  CostVector recharge_lo{0.0, 0.0};
  CostVector recharge_hi{0.0, 0.0};

  friend bool operator==(const UnitCosts&, const UnitCosts&) = default;
};

struct Scenario {
  double grid_size = 100.0;
  Point2 start;
  Point2 recharge_site;
  UnitCosts unit_costs;
  CostVector budget{600.0, 60.0};
  std::vector<ActionSpec> actions;
  uint64_t rng_seed = 0;

  const ActionSpec* find_action(int id) const;
  /// The unique RechargeReturn action, or nullptr if absent/duplicated.
  const ActionSpec* recharge_action() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// One violated scenario invariant. Violations are data, not failures:
/// loading a broken file succeeds and validation reports what is wrong.
struct Violation {
  std::string rule;
  std::string detail;
  std::vector<int> action_ids;
};

/// Checks every scenario invariant and returns the violations found
/// (empty result means the scenario is valid):
///   - cost ordering: C(HI)[r] >= C(LO)[r] for every cost table entry
///   - criticality dependency: no HI-action depends on a LO-action
///   - reward dominance: for every HI-action i, sum of LO rewards < r_i
///   - both criticality sets non-empty
///   - geometry: start, recharge site and action locations inside the grid
///   - dependency references resolve, costs and rewards non-negative,
///     exactly one RechargeReturn located at the recharge site
std::vector<Violation> validate_scenario(const Scenario& s);

/// Worst-case cost of performing `a` starting `from` a point, under the LO or
/// HI cost table: euclidean distance times the per-unit move cost plus the
/// fixed cost of the action kind. Deterministic.
CostVector action_cost(const Scenario& s, Point2 from, const ActionSpec& a,
                       Mode mode_assumption);

}  // namespace mcplan
