#include "mcplan/accounting.hpp"

#include <stdexcept>

namespace mcplan {

std::pair<BudgetEntry, BranchContext> accumulate(const BranchContext& ctx,
                                                 Criticality crit,
                                                 const CostVector& c_lo,
                                                 const CostVector& c_hi) {
  if (!all_leq(c_lo, c_hi))
    throw std::invalid_argument(
        "accumulate: cost ordering violated (c_hi < c_lo in some component)");
  if (!c_lo.non_negative())
    throw std::invalid_argument("accumulate: negative cost component");

  BudgetEntry entry;
  entry.lo = ctx.prev.lo + c_lo;
  entry.hi = crit == Criticality::HI ? ctx.hi_chain_max + c_hi
                                     : ctx.prev.lo + c_hi;

  BranchContext next;
  next.prev = entry;
  next.length = ctx.length + 1;
  if (crit == Criticality::HI) {
    next.hi_chain_max = entry.hi;
    next.h_marker = next.length;
  } else {
    next.hi_chain_max = CostVector::max(ctx.hi_chain_max, entry.hi);
    next.h_marker = ctx.h_marker;
  }

  // Postconditions, kept on in release builds: they guard the safety
  // argument of every plan the search produces.
  if (!all_leq(entry.lo, entry.hi))
    throw std::logic_error("accumulate: dominance b(HI) >= b(LO) violated");
  if (!all_leq(ctx.prev.lo, entry.lo))
    throw std::logic_error("accumulate: b(LO) must be non-decreasing");
  if (!all_leq(ctx.prev.lo, entry.hi))
    throw std::logic_error("accumulate: b(HI) fell below the previous b(LO)");
  if (!all_leq(next.prev.hi, next.hi_chain_max))
    throw std::logic_error("accumulate: chain max must dominate prev.hi");

  return {entry, next};
}

}  // namespace mcplan
