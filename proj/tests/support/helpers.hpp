#pragma once

#include <vector>

#include "mcplan/accounting.hpp"
#include "mcplan/executive.hpp"
#include "mcplan/model.hpp"
#include "mcplan/planner.hpp"
#include "mcplan/rng.hpp"

namespace mcplan::test {

struct OracleStep {
  Criticality crit;
  CostVector c_lo;
  CostVector c_hi;
};

/// Independent route to the accumulated budget entries of a branch: direct
/// summation over every single-mode-switch scenario.
///
/// b_k(LO) is the plain optimistic prefix sum. For b_k(HI):
///   - LO step k: the only scenario keeping k executable is a switch during
///     k itself, on top of the optimistic prefix: lo[k-1] + c_hi[k].
///   - HI step k: the worst over (a) the switch happening during any LO step
///     s after the last preceding HI step h, after which k still executes
///     pessimistically, (b) the switch during k itself, and (c) the chain
///     already pessimistic since step h.
inline std::vector<BudgetEntry> oracle_entries(
    const std::vector<OracleStep>& steps) {
  const size_t n = steps.size();
  std::vector<BudgetEntry> out(n);

  for (Resource r : kAllResources) {
    std::vector<double> lo(n + 1, 0.0);  // lo[k] = b_k(LO)[r], lo[0] = 0
    std::vector<double> hi(n + 1, 0.0);  // hi[k] = b_k(HI)[r], hi[0] = 0
    size_t last_hi = 0;
    for (size_t k = 1; k <= n; ++k) {
      const OracleStep& st = steps[k - 1];
      lo[k] = lo[k - 1] + st.c_lo[r];
      if (st.crit == Criticality::LO) {
        hi[k] = lo[k - 1] + st.c_hi[r];
      } else {
        double worst = hi[last_hi] + st.c_hi[r];  // already-pessimistic chain
        for (size_t s = last_hi + 1; s < k; ++s)  // switch during LO step s
          worst = std::max(worst, (lo[s - 1] + steps[s - 1].c_hi[r]) + st.c_hi[r]);
        worst = std::max(worst, lo[k - 1] + st.c_hi[r]);  // switch during k
        hi[k] = worst;
        last_hi = k;
      }
      out[k - 1].lo[r] = lo[k];
      out[k - 1].hi[r] = hi[k];
    }
  }
  return out;
}

/// Runs the same steps through the production accumulator.
inline std::vector<BudgetEntry> accumulate_entries(
    const std::vector<OracleStep>& steps) {
  std::vector<BudgetEntry> out;
  BranchContext ctx = BranchContext::root();
  for (const auto& st : steps) {
    auto [entry, next] = accumulate(ctx, st.crit, st.c_lo, st.c_hi);
    out.push_back(entry);
    ctx = next;
  }
  return out;
}

inline std::vector<OracleStep> random_steps(RngEngine& rng, size_t max_len = 6,
                                            bool force_hi_tail = false) {
  const size_t n = 1 + rng.uniform_index(max_len);
  std::vector<OracleStep> steps(n);
  for (size_t i = 0; i < n; ++i) {
    OracleStep& st = steps[i];
    st.crit = rng.uniform_index(2) == 0 ? Criticality::LO : Criticality::HI;
    for (Resource r : kAllResources) {
      const double lo = rng.next_double() * 10.0;
      st.c_lo[r] = lo;
      st.c_hi[r] = lo * (1.0 + 2.0 * rng.next_double());
    }
  }
  if (force_hi_tail) steps.back().crit = Criticality::HI;
  return steps;
}

/// Builds an executable plan from synthetic steps (entries via the
/// production accumulator). Actions get ids 0..n-1; the final step becomes
/// the recharge return when its criticality is HI.
inline Plan synthetic_plan(const std::vector<OracleStep>& steps,
                           bool last_is_recharge = true) {
  Plan p;
  BranchContext ctx = BranchContext::root();
  for (size_t i = 0; i < steps.size(); ++i) {
    auto [entry, next] = accumulate(ctx, steps[i].crit, steps[i].c_lo,
                                    steps[i].c_hi);
    ctx = next;
    ActionSpec a;
    a.id = static_cast<int>(i);
    a.criticality = steps[i].crit;
    a.reward = steps[i].crit == Criticality::HI ? 0.2 : 0.0166;
    a.kind = ActionKind::Reach;
    if (last_is_recharge && i + 1 == steps.size()) {
      a.kind = ActionKind::RechargeReturn;
      a.reward = 1.0;
    }
    p.steps.push_back({a, steps[i].c_lo, steps[i].c_hi, entry});
  }
  return p;
}

/// Cost source scripted by plan index.
class ScriptedCosts final : public CostSource {
 public:
  explicit ScriptedCosts(std::vector<CostVector> by_plan_index)
      : by_index_(std::move(by_plan_index)) {}

  CostVector actual_cost(const PlanStep& step, int plan_index) override {
    if (plan_index >= 0 && static_cast<size_t>(plan_index) < by_index_.size())
      return by_index_[plan_index];
    return step.c_lo * 0.5;
  }

 private:
  std::vector<CostVector> by_index_;
};

/// Minimal scenario wrapping the synthetic plan's steps so the window
/// executor has a budget to check against.
inline Scenario synthetic_scenario_for(const Plan& p, CostVector budget) {
  Scenario s;
  s.grid_size = 1000.0;
  s.start = {0.0, 0.0};
  s.recharge_site = {0.0, 0.0};
  s.budget = budget;
  for (const auto& step : p.steps) s.actions.push_back(step.action);
  return s;
}

/// Clamped objective value of a finished plan, as the planner scores it.
inline double plan_objective(const Scenario& s, const Plan& p) {
  double reward = 0.0;
  for (const auto& st : p.steps) reward += st.action.reward;
  const double g =
      objective_value(reward, p.steps.back().entry.lo[Resource::Duration],
                      s.budget[Resource::Duration]);
  return g < 0.0 ? 0.0 : (g > 1.0 ? 1.0 : g);
}

/// Exhaustive optimum over the planner's plan space: every ordering of
/// targets terminated by the recharge return where each prefix both fits
/// the budget and keeps the safe return feasible (usable for scenarios with
/// up to ~8 targets). Returns a negative value when not even the recharge
/// return fits.
inline double brute_force_optimum(const Scenario& s) {
  std::vector<const ActionSpec*> targets;
  const ActionSpec* recharge = nullptr;
  for (const auto& a : s.actions) {
    if (a.kind == ActionKind::RechargeReturn)
      recharge = &a;
    else
      targets.push_back(&a);
  }
  if (recharge == nullptr) return -1.0;

  auto return_entry = [&](const BranchContext& ctx, Point2 pos) {
    const CostVector lo = action_cost(s, pos, *recharge, Mode::LO);
    const CostVector hi = action_cost(s, pos, *recharge, Mode::HI);
    return accumulate(ctx, recharge->criticality, lo, hi).first;
  };

  double best = -1.0;
  struct Frame {
    Point2 pos;
    BranchContext ctx;
    double reward;
    uint32_t done;
  };
  auto visit = [&](auto&& self, const Frame& f) -> void {
    {
      const BudgetEntry entry = return_entry(f.ctx, f.pos);
      if (feasible(entry, s.budget)) {
        double g = objective_value(f.reward + recharge->reward,
                                   entry.lo[Resource::Duration],
                                   s.budget[Resource::Duration]);
        g = g < 0.0 ? 0.0 : (g > 1.0 ? 1.0 : g);
        best = best < g ? g : best;
      }
    }
    for (size_t i = 0; i < targets.size(); ++i) {
      if (f.done & (1u << i)) continue;
      const CostVector lo = action_cost(s, f.pos, *targets[i], Mode::LO);
      const CostVector hi = action_cost(s, f.pos, *targets[i], Mode::HI);
      auto [entry, ctx2] = accumulate(f.ctx, targets[i]->criticality, lo, hi);
      if (!feasible(entry, s.budget)) continue;
      if (!feasible(return_entry(ctx2, targets[i]->location), s.budget))
        continue;
      self(self, Frame{targets[i]->location, ctx2,
                       f.reward + targets[i]->reward, f.done | (1u << i)});
    }
  };
  visit(visit, Frame{s.start, BranchContext::root(), 0.0, 0});
  return best;
}

}  // namespace mcplan::test
