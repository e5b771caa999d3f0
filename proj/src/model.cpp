#include "mcplan/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace mcplan {

const char* to_string(Criticality c) {
  return c == Criticality::LO ? "LO" : "HI";
}

const char* to_string(Mode m) { return m == Mode::LO ? "LO" : "HI"; }

const char* to_string(ActionKind k) {
  switch (k) {
    case ActionKind::Reach:
      return "reach";
    case ActionKind::RetrieveData:
      return "retrieve_data";
    case ActionKind::RechargeReturn:
      return "recharge_return";
  }
  throw std::invalid_argument("unknown action kind");
}

const ActionSpec* Scenario::find_action(int id) const {
  for (const auto& a : actions)
    if (a.id == id) return &a;
  return nullptr;
}

const ActionSpec* Scenario::recharge_action() const {
  const ActionSpec* found = nullptr;
  for (const auto& a : actions) {
    if (a.kind != ActionKind::RechargeReturn) continue;
    if (found) return nullptr;
    found = &a;
  }
  return found;
}

namespace {

bool in_grid(Point2 p, double grid) {
  return p.x >= 0.0 && p.x <= grid && p.y >= 0.0 && p.y <= grid;
}

void check_cost_pair(const char* what, const CostVector& lo,
                     const CostVector& hi, std::vector<Violation>& out) {
  if (!lo.non_negative() || !hi.non_negative())
    out.push_back({"negative cost",
                   std::string(what) + " has a negative component", {}});
  for (Resource r : kAllResources) {
    if (hi[r] < lo[r]) {
      out.push_back({"cost ordering",
                     std::string(what) + " " + resource_name(r) +
                         ": C(HI) < C(LO)",
                     {}});
    }
  }
}

}  // namespace

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;

  if (s.grid_size <= 0.0)
    out.push_back({"grid", "grid_size must be positive", {}});
  if (!in_grid(s.start, s.grid_size))
    out.push_back({"geometry", "start lies outside the grid", {}});
  if (!in_grid(s.recharge_site, s.grid_size))
    out.push_back({"geometry", "recharge_site lies outside the grid", {}});
  if (!s.budget.non_negative())
    out.push_back({"budget", "budget has a negative component", {}});

  check_cost_pair("move", s.unit_costs.move_lo, s.unit_costs.move_hi, out);
  check_cost_pair("retrieve", s.unit_costs.retrieve_lo,
                  s.unit_costs.retrieve_hi, out);
  check_cost_pair("recharge", s.unit_costs.recharge_lo,
                  s.unit_costs.recharge_hi, out);

  std::unordered_map<int, const ActionSpec*> by_id;
  for (const auto& a : s.actions) {
    if (!by_id.emplace(a.id, &a).second)
      out.push_back({"duplicate id", "action id appears twice", {a.id}});
  }

  size_t n_hi = 0, n_lo = 0;
  double lo_reward_sum = 0.0;
  for (const auto& a : s.actions) {
    if (a.criticality == Criticality::HI) {
      ++n_hi;
    } else {
      ++n_lo;
      lo_reward_sum += a.reward;
    }
    if (!in_grid(a.location, s.grid_size))
      out.push_back({"geometry", "action location outside the grid", {a.id}});
    if (a.reward < 0.0)
      out.push_back({"reward", "negative reward", {a.id}});
    if (a.reward <= 0.0 && a.kind != ActionKind::Reach)
      out.push_back({"reward", "objective action with zero reward", {a.id}});
    for (int dep : a.depends_on) {
      auto it = by_id.find(dep);
      if (it == by_id.end()) {
        out.push_back(
            {"dependency", "depends_on references unknown action", {a.id, dep}});
        continue;
      }
      if (a.criticality == Criticality::HI &&
          it->second->criticality == Criticality::LO) {
        out.push_back({"criticality dependency",
                       "HI-action depends on a LO-action",
                       {a.id, dep}});
      }
      if (dep == a.id)
        out.push_back({"dependency", "action depends on itself", {a.id}});
    }
  }

  if (n_hi == 0)
    out.push_back({"criticality sets", "no HI-action in the scenario", {}});
  if (n_lo == 0)
    out.push_back({"criticality sets", "no LO-action in the scenario", {}});

  // Reward dominance: every HI reward must exceed the sum of all LO rewards,
  // otherwise LO objectives could outbid a HI objective during search.
  for (const auto& a : s.actions) {
    if (a.criticality == Criticality::HI && lo_reward_sum >= a.reward) {
      out.push_back({"reward dominance",
                     "sum of LO rewards >= reward of HI-action",
                     {a.id}});
    }
  }

  const ActionSpec* recharge = s.recharge_action();
  if (recharge == nullptr) {
    out.push_back(
        {"recharge", "scenario needs exactly one recharge_return action", {}});
  } else {
    if (recharge->criticality != Criticality::HI)
      out.push_back({"recharge", "recharge_return must be HI", {recharge->id}});
    if (!(recharge->location == s.recharge_site))
      out.push_back({"recharge",
                     "recharge_return is not located at recharge_site",
                     {recharge->id}});
  }

  return out;
}

CostVector action_cost(const Scenario& s, Point2 from, const ActionSpec& a,
                       Mode mode_assumption) {
  const bool lo = mode_assumption == Mode::LO;
  const CostVector& move = lo ? s.unit_costs.move_lo : s.unit_costs.move_hi;
  CostVector cost = move * distance(from, a.location);
  switch (a.kind) {
    case ActionKind::Reach:
      break;
    case ActionKind::RetrieveData:
      cost += lo ? s.unit_costs.retrieve_lo : s.unit_costs.retrieve_hi;
      break;
    case ActionKind::RechargeReturn:
      cost += lo ? s.unit_costs.recharge_lo : s.unit_costs.recharge_hi;
      break;
    default:
      throw std::invalid_argument("unknown action kind");
  }
  return cost;
}

}  // namespace mcplan
