#include "mcplan/planner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace mcplan {

namespace {

constexpr double kTimePenaltyWeight = 1e-4;
constexpr double kValueNormalizer = 7.5;

uint64_t mix_hash(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

const char* to_string(AccountingStrategy s) {
  switch (s) {
    case AccountingStrategy::MixedCriticality:
      return "mixed_criticality";
    case AccountingStrategy::PessimisticOnly:
      return "pessimistic";
    case AccountingStrategy::OptimisticOnly:
      return "optimistic";
  }
  return "?";
}

double objective_value(double reward_sum, double t, double time_budget) {
  return (reward_sum - (t / time_budget) * kTimePenaltyWeight) /
         kValueNormalizer;
}

MctsPlanner::MctsPlanner(const Scenario& s, const ExecutionState& from,
                         const SearchConfig& cfg, RngEngine& rng)
    : scenario_(s), cfg_(cfg), rng_(rng) {
  if (cfg_.computation_budget < 1 || cfg_.horizon < 1 ||
      cfg_.exploration_c < 0.0)
    throw std::invalid_argument("invalid search configuration");

  remaining_budget_ = s.budget - from.consumed;
  base_duration_ = from.consumed[Resource::Duration];

  base_done_.assign(s.actions.size(), 0);
  for (size_t i = 0; i < s.actions.size(); ++i) {
    const ActionSpec& a = s.actions[i];
    if (a.kind == ActionKind::RechargeReturn) recharge_index_ = static_cast<int>(i);
    if (from.completed.count(a.id)) {
      base_done_[i] = 1;
      base_reward_ += a.reward;
    }
  }
  if (recharge_index_ < 0)
    throw std::logic_error("scenario has no recharge_return action");
  if (base_done_[recharge_index_])
    throw std::logic_error("planning after the recharge return completed");

  // A plan must always terminate with the recharge return; if it does not fit
  // the remaining budget directly it cannot fit after any detour either.
  {
    const ActionSpec& recharge = s.actions[recharge_index_];
    const StepCosts c = step_costs(from.position, recharge);
    const auto [entry, ctx] =
        accumulate(BranchContext::root(), recharge.criticality, c.lo, c.hi);
    if (!feasible(entry, remaining_budget_)) throw NoFeasiblePlan();
  }

  root_ = std::make_unique<Node>();
  root_->position = from.position;
  root_->ctx = BranchContext::root();
  root_->reward_sum = base_reward_;
  scratch_done_.assign(s.actions.size(), 0);
  path_completed(*root_, scratch_done_);
  root_->untried = feasible_candidates(*root_, scratch_done_);
}

MctsPlanner::StepCosts MctsPlanner::step_costs(Point2 from,
                                               const ActionSpec& a) const {
  const CostVector lo = action_cost(scenario_, from, a, Mode::LO);
  const CostVector hi = action_cost(scenario_, from, a, Mode::HI);
  switch (cfg_.strategy) {
    case AccountingStrategy::MixedCriticality:
      return {lo, hi};
    case AccountingStrategy::PessimisticOnly:
      return {hi, hi};
    case AccountingStrategy::OptimisticOnly:
      return {lo, lo};
  }
  throw std::logic_error("unknown accounting strategy");
}

void MctsPlanner::path_completed(const Node& node,
                                 std::vector<char>& scratch) const {
  scratch = base_done_;
  for (const Node* n = &node; n->parent != nullptr; n = n->parent)
    scratch[n->action_index] = 1;
}

bool MctsPlanner::deps_satisfied(const ActionSpec& a,
                                 const std::vector<char>& done) const {
  for (int dep : a.depends_on) {
    bool ok = false;
    for (size_t i = 0; i < scenario_.actions.size(); ++i) {
      if (scenario_.actions[i].id == dep) {
        ok = done[i] != 0;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

bool MctsPlanner::returnable(const BranchContext& ctx, Point2 from) const {
  const ActionSpec& recharge = scenario_.actions[recharge_index_];
  const StepCosts c = step_costs(from, recharge);
  const auto [entry, next] =
      accumulate(ctx, recharge.criticality, c.lo, c.hi);
  return feasible(entry, remaining_budget_);
}

// An action is a candidate when it fits the budget itself and the mandatory
// recharge return still fits afterwards. Every node therefore keeps the safe
// return among its candidates, so any search prefix can be completed into a
// valid plan at any time; an action that would strand the robot in
// worst-case terms never enters the tree or a rollout.
bool MctsPlanner::candidate_feasible(const BranchContext& ctx, Point2 from,
                                     const ActionSpec& a) const {
  const StepCosts c = step_costs(from, a);
  const auto [entry, next] = accumulate(ctx, a.criticality, c.lo, c.hi);
  if (!feasible(entry, remaining_budget_)) return false;
  if (a.kind == ActionKind::RechargeReturn) return true;
  return returnable(next, a.location);
}

std::vector<int> MctsPlanner::feasible_candidates(
    const Node& node, const std::vector<char>& done) const {
  std::vector<int> out;
  if (node.terminal) return out;
  for (size_t i = 0; i < scenario_.actions.size(); ++i) {
    if (done[i]) continue;
    const ActionSpec& a = scenario_.actions[i];
    if (!deps_satisfied(a, done)) continue;
    if (candidate_feasible(node.ctx, node.position, a))
      out.push_back(static_cast<int>(i));
  }
  return out;
}

std::unique_ptr<MctsPlanner::Node> MctsPlanner::make_child(Node& parent,
                                                           int action_index) {
  const ActionSpec& a = scenario_.actions[action_index];
  const StepCosts c = step_costs(parent.position, a);
  auto [entry, ctx] = accumulate(parent.ctx, a.criticality, c.lo, c.hi);

  auto child = std::make_unique<Node>();
  child->action_index = action_index;
  child->parent = &parent;
  child->entry = entry;
  child->ctx = ctx;
  child->position = a.location;
  child->reward_sum = parent.reward_sum + a.reward;
  child->terminal = action_index == recharge_index_;
  if (!child->terminal) {
    path_completed(*child, scratch_done_);
    child->untried = feasible_candidates(*child, scratch_done_);
  }
  return child;
}

MctsPlanner::Node* MctsPlanner::select() {
  Node* node = root_.get();
  while (node->untried.empty() && !node->children.empty()) {
    Node* best = nullptr;
    double best_score = -1.0;
    for (const auto& child : node->children) {
      const double score = ucb_score(*node, *child);
      if (best == nullptr || score > best_score) {
        best = child.get();
        best_score = score;
      }
    }
    node = best;
  }
  return node;
}

double MctsPlanner::ucb_score(const Node& parent, const Node& child) const {
  const double n = std::max(parent.visits, 1);
  return child.mean() +
         cfg_.exploration_c * std::sqrt(std::log(n) / child.visits);
}

MctsPlanner::Node* MctsPlanner::expand(Node* node, RngEngine& rng) {
  if (node->untried.empty())
    throw std::logic_error("expand called on a non-expandable node");
  const size_t pick = rng.uniform_index(node->untried.size());
  const int action_index = node->untried[pick];
  node->untried[pick] = node->untried.back();
  node->untried.pop_back();
  node->children.push_back(make_child(*node, action_index));
  return node->children.back().get();
}

double MctsPlanner::rollout(const Node& node, int horizon,
                            RngEngine& rng) const {
  std::vector<char> done;
  path_completed(node, done);

  Point2 pos = node.position;
  BranchContext ctx = node.ctx;
  BudgetEntry entry = node.entry;
  double reward = node.reward_sum;
  bool terminal = node.terminal;

  std::vector<int> candidates;
  for (int step = 0; step < horizon && !terminal; ++step) {
    candidates.clear();
    for (size_t i = 0; i < scenario_.actions.size(); ++i) {
      if (done[i]) continue;
      const ActionSpec& a = scenario_.actions[i];
      if (!deps_satisfied(a, done)) continue;
      if (candidate_feasible(ctx, pos, a)) candidates.push_back(static_cast<int>(i));
    }
    if (candidates.empty()) break;
    const int idx = candidates[rng.uniform_index(candidates.size())];
    const ActionSpec& a = scenario_.actions[idx];
    const StepCosts c = step_costs(pos, a);
    std::tie(entry, ctx) = accumulate(ctx, a.criticality, c.lo, c.hi);
    done[idx] = 1;
    reward += a.reward;
    pos = a.location;
    terminal = idx == recharge_index_;
  }

  // Every plan ends with the mandatory recharge return, so a simulated
  // continuation is valued as if that return happens now, provided it still
  // fits the budget. Branches that can no longer return safely forfeit the
  // return reward, which steers the search away from them.
  if (!terminal) {
    const ActionSpec& recharge = scenario_.actions[recharge_index_];
    const StepCosts c = step_costs(pos, recharge);
    const auto [e, _] = accumulate(ctx, recharge.criticality, c.lo, c.hi);
    if (feasible(e, remaining_budget_)) {
      reward += recharge.reward;
      entry = e;
    }
  }

  const double t = base_duration_ + entry.lo[Resource::Duration];
  const double g =
      objective_value(reward, t, scenario_.budget[Resource::Duration]);
  return std::clamp(g, 0.0, 1.0);
}

void MctsPlanner::backpropagate(Node* leaf, double value) {
  if (value < 0.0 || value > 1.0)
    throw std::invalid_argument("backpropagated value outside [0, 1]");
  for (Node* n = leaf; n != nullptr; n = n->parent) {
    n->visits += 1;
    n->total_value += value;
  }
}

void MctsPlanner::iterate() {
  Node* node = select();
  if (!node->untried.empty()) node = expand(node, rng_);
  const double value = rollout(*node, cfg_.horizon, rng_);
  backpropagate(node, value);
}

void MctsPlanner::run() {
  for (int i = 0; i < cfg_.computation_budget; ++i) iterate();
}

Plan MctsPlanner::extract_plan() const {
  // Robust-child descent: most visits, ties broken by higher mean value and
  // then by lower action id so extraction is reproducible.
  std::vector<const Node*> chain{root_.get()};
  while (!chain.back()->terminal && !chain.back()->children.empty()) {
    const Node* best = nullptr;
    for (const auto& child : chain.back()->children) {
      if (best == nullptr) {
        best = child.get();
        continue;
      }
      const int id = scenario_.actions[child->action_index].id;
      const int best_id = scenario_.actions[best->action_index].id;
      if (child->visits != best->visits) {
        if (child->visits > best->visits) best = child.get();
      } else if (child->mean() != best->mean()) {
        if (child->mean() > best->mean()) best = child.get();
      } else if (id < best_id) {
        best = child.get();
      }
    }
    chain.push_back(best);
  }

  Plan out;
  for (size_t k = 1; k < chain.size(); ++k) {
    const Node* n = chain[k];
    const ActionSpec& a = scenario_.actions[n->action_index];
    const StepCosts c = step_costs(chain[k - 1]->position, a);
    out.steps.push_back({a, c.lo, c.hi, n->entry});
  }

  if (!out.steps.empty() &&
      out.steps.back().action.kind == ActionKind::RechargeReturn)
    return out;

  // The descent ended before the recharge return; truncate until it can be
  // appended feasibly. The constructor guarantees this succeeds at the root.
  const ActionSpec& recharge = scenario_.actions[recharge_index_];
  for (size_t k = out.steps.size() + 1; k-- > 0;) {
    const Node* node = chain[k];
    const StepCosts c = step_costs(node->position, recharge);
    const auto [entry, ctx] =
        accumulate(node->ctx, recharge.criticality, c.lo, c.hi);
    if (feasible(entry, remaining_budget_)) {
      out.steps.resize(k);
      out.steps.push_back({recharge, c.lo, c.hi, entry});
      return out;
    }
  }
  throw NoFeasiblePlan();
}

uint64_t MctsPlanner::tree_digest() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  struct Walker {
    uint64_t* h;
    void operator()(const Node& n) const {
      *h = mix_hash(*h, static_cast<uint64_t>(n.action_index + 1));
      *h = mix_hash(*h, static_cast<uint64_t>(n.visits));
      *h = mix_hash(*h, std::bit_cast<uint64_t>(n.total_value));
      *h = mix_hash(*h, std::bit_cast<uint64_t>(n.entry.lo.duration()));
      *h = mix_hash(*h, std::bit_cast<uint64_t>(n.entry.hi.duration()));
      *h = mix_hash(*h, std::bit_cast<uint64_t>(n.entry.lo.energy()));
      *h = mix_hash(*h, std::bit_cast<uint64_t>(n.entry.hi.energy()));
      for (const auto& c : n.children) (*this)(*c);
      *h = mix_hash(*h, 0xff);
    }
  };
  Walker{&h}(*root_);
  return h;
}

Plan plan(const Scenario& s, const ExecutionState& from,
          const SearchConfig& cfg, RngEngine& rng) {
  MctsPlanner planner(s, from, cfg, rng);
  planner.run();
  return planner.extract_plan();
}

}  // namespace mcplan
