#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "mcplan/accounting.hpp"
#include "mcplan/model.hpp"
#include "mcplan/rng.hpp"
#include "mcplan/state.hpp"

namespace mcplan {

/// How the search accounts for worst-case costs while growing the tree.
///   MixedCriticality: dual bookkeeping, optimistic spine with a pessimistic
///                     completion bound per step.
///   PessimisticOnly:  plain search over pessimistic costs (both components
///                     accumulate C(HI)).
///   OptimisticOnly:   plain search over optimistic costs (both accumulate
///                     C(LO)).
enum class AccountingStrategy { MixedCriticality, PessimisticOnly, OptimisticOnly };

const char* to_string(AccountingStrategy s);

struct SearchConfig {
  int computation_budget = 600;  // number of selection phases to run
  int horizon = 5;               // max actions appended per rollout
  double exploration_c = 0.5;    // UCT exploration constant
  AccountingStrategy strategy = AccountingStrategy::MixedCriticality;
};

/// One plan step: the action, its worst-case cost pair as computed from the
/// planned predecessor position, and the accumulated budget entry.
struct PlanStep {
  ActionSpec action;
  CostVector c_lo;
  CostVector c_hi;
  BudgetEntry entry;
};

/// Ordered action sequence produced by the planner. Every step's entry is
/// feasible against the remaining budget, dependencies precede their
/// dependents, and the final step is always the RechargeReturn action.
struct Plan {
  std::vector<PlanStep> steps;

  bool empty() const { return steps.empty(); }
};

struct NoFeasiblePlan : std::runtime_error {
  NoFeasiblePlan() : std::runtime_error("no feasible plan: not even the recharge return fits the remaining budget") {}
};

/// Objective value of a completed-action set: total reward minus a small
/// time-preference penalty, normalized to stay below 1 for UCT.
///   g = (reward_sum - (t / time_budget) * 1e-4) / 7.5
double objective_value(double reward_sum, double t, double time_budget);

/// Anytime UCT search over action sequences with strategy-dependent
/// worst-case accounting. One instance runs one search from a fixed state;
/// instances are independent and safe to run concurrently.
class MctsPlanner {
 public:
  struct Node {
    int action_index = -1;  // index into scenario actions, -1 for the root
    Node* parent = nullptr;
    int visits = 0;
    double total_value = 0.0;
    BudgetEntry entry;
    BranchContext ctx;
    Point2 position;
    double reward_sum = 0.0;  // whole-mission reward through this node
    bool terminal = false;    // recharge executed; no continuations
    std::vector<int> untried;
    std::vector<std::unique_ptr<Node>> children;

    double mean() const { return visits > 0 ? total_value / visits : 0.0; }
  };

  /// Throws NoFeasiblePlan when RechargeReturn alone does not fit the
  /// remaining budget from this state.
  MctsPlanner(const Scenario& s, const ExecutionState& from,
              const SearchConfig& cfg, RngEngine& rng);

  /// Runs exactly cfg.computation_budget select/expand/rollout/backpropagate
  /// iterations.
  void run();
  void iterate();

  /// Descends by visit count (ties: higher mean, then lower action id) and
  /// guarantees the result terminates with a feasible RechargeReturn step.
  Plan extract_plan() const;

  // Search phases, exposed individually for testing.
  Node* select();
  Node* expand(Node* node, RngEngine& rng);
  /// Simulates up to `horizon` uniformly random feasible continuations and
  /// evaluates the objective over the resulting completed set. Since every
  /// plan must end with the recharge return, the evaluation includes that
  /// mandatory terminal step whenever it still fits the remaining budget.
  double rollout(const Node& node, int horizon, RngEngine& rng) const;
  void backpropagate(Node* leaf, double value);

  double ucb_score(const Node& parent, const Node& child) const;

  const Node& root() const { return *root_; }
  const CostVector& remaining_budget() const { return remaining_budget_; }

  /// Order-sensitive structural hash of the tree (actions, visits, values).
  uint64_t tree_digest() const;

 private:
  friend struct PlannerTestAccess;

  struct StepCosts {
    CostVector lo;
    CostVector hi;
  };

  StepCosts step_costs(Point2 from, const ActionSpec& a) const;
  void path_completed(const Node& node, std::vector<char>& scratch) const;
  bool returnable(const BranchContext& ctx, Point2 from) const;
  bool candidate_feasible(const BranchContext& ctx, Point2 from,
                          const ActionSpec& a) const;
  std::vector<int> feasible_candidates(const Node& node,
                                       const std::vector<char>& done) const;
  bool deps_satisfied(const ActionSpec& a,
                      const std::vector<char>& done) const;
  std::unique_ptr<Node> make_child(Node& parent, int action_index);

  const Scenario& scenario_;
  SearchConfig cfg_;
  RngEngine& rng_;
  CostVector remaining_budget_;
  double base_duration_ = 0.0;    // mission time consumed before this search
  double base_reward_ = 0.0;      // reward already collected before it
  std::vector<char> base_done_;   // completed before this search, by index
  int recharge_index_ = -1;
  std::unique_ptr<Node> root_;
  mutable std::vector<char> scratch_done_;
};

/// Convenience wrapper: build a planner, run the full computation budget and
/// extract the plan.
Plan plan(const Scenario& s, const ExecutionState& from,
          const SearchConfig& cfg, RngEngine& rng);

}  // namespace mcplan
