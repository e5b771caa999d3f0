#pragma once

#include <utility>

#include "mcplan/cost.hpp"
#include "mcplan/model.hpp"

namespace mcplan {

/// Accumulated worst-case cost of a plan prefix, per criticality mode.
///
/// lo[r] bounds the consumption of resource r through this step when every
/// action so far ran within its optimistic worst case. hi[r] bounds the
/// consumption when a mode switch forces the remaining chain onto pessimistic
/// worst cases. dominance (hi >= lo componentwise) holds by construction and
/// is re-checked after every accumulation.
struct BudgetEntry {
  CostVector lo;
  CostVector hi;

  friend bool operator==(const BudgetEntry&, const BudgetEntry&) = default;
};

/// Rolling state needed to extend a branch by one action.
///
/// hi_chain_max[r] carries max over j in [h, k) of b_j(HI)[r], where h is the
/// position of the last HI-action on the branch (or the root). It always
/// dominates prev.hi because the window includes j = k-1.
struct BranchContext {
  BudgetEntry prev;
  CostVector hi_chain_max;
  int h_marker = 0;  // branch index of the last HI-action, 0 = root
  int length = 0;    // number of actions accumulated so far

  static BranchContext root() { return BranchContext{}; }
};

/// Extends a branch by one action with worst-case cost pair (c_lo, c_hi) and
/// returns the new accumulated entry plus the context for further steps.
///
/// For a LO-action the pessimistic bound assumes the mode switch happens
/// during this very action, so it grows from the previous optimistic total:
///   lo[r] = prev.lo[r] + c_lo[r]
///   hi[r] = prev.lo[r] + c_hi[r]
/// For a HI-action the pessimistic bound must cover whichever earlier switch
/// point was worst, hence the running max over the HI chain window:
///   lo[r] = prev.lo[r] + c_lo[r]
///   hi[r] = hi_chain_max[r] + c_hi[r]
/// A HI-action resets the window: its own hi becomes the only element.
///
/// Throws std::invalid_argument when c_hi < c_lo in any component and
/// std::logic_error if a postcondition (dominance, LO monotonicity,
/// window dominance) fails.
std::pair<BudgetEntry, BranchContext> accumulate(const BranchContext& ctx,
                                                 Criticality crit,
                                                 const CostVector& c_lo,
                                                 const CostVector& c_hi);

/// Worst-case-safe feasibility: the step fits iff its pessimistic accumulated
/// cost stays within the budget on every resource (inclusive boundary).
/// Checking hi suffices because hi >= lo.
inline bool feasible(const BudgetEntry& entry, const CostVector& budget) {
  return all_leq(entry.hi, budget);
}

/// Runtime mode decision after executing a step: HI iff the actual
/// accumulated consumption strictly exceeds the planned optimistic bound on
/// at least one resource. The same predicate drives reversion to LO once all
/// consumptions fall back within the optimistic bound.
inline Mode switch_decision(const CostVector& actual,
                            const CostVector& planned_lo) {
  return any_gt(actual, planned_lo) ? Mode::HI : Mode::LO;
}

}  // namespace mcplan
