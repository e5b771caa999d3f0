#include <doctest.h>

#include "mcplan/accounting.hpp"
#include "support/helpers.hpp"

using namespace mcplan;
using mcplan::test::OracleStep;

namespace {

// Single-resource step helper (energy column zeroed).
OracleStep step(Criticality c, double lo, double hi) {
  return {c, CostVector{lo, 0.0}, CostVector{hi, 0.0}};
}

}  // namespace

TEST_CASE("LO chain then HI action takes the worst switch point") {
  // root -> LO(2,4) -> LO(3,6) -> HI(5,10)
  const auto entries = mcplan::test::accumulate_entries(
      {step(Criticality::LO, 2, 4), step(Criticality::LO, 3, 6),
       step(Criticality::HI, 5, 10)});

  CHECK(entries[0].lo.duration() == 2.0);
  CHECK(entries[0].hi.duration() == 4.0);
  CHECK(entries[1].lo.duration() == 5.0);
  CHECK(entries[1].hi.duration() == 8.0);
  CHECK(entries[2].lo.duration() == 10.0);
  CHECK(entries[2].hi.duration() == 18.0);  // max(0, 4, 8) + 10
}

TEST_CASE("HI window restarts after a HI action") {
  // root -> HI(5,10) -> LO(2,4) -> HI(5,10)
  const auto entries = mcplan::test::accumulate_entries(
      {step(Criticality::HI, 5, 10), step(Criticality::LO, 2, 4),
       step(Criticality::HI, 5, 10)});

  CHECK(entries[0].lo.duration() == 5.0);
  CHECK(entries[0].hi.duration() == 10.0);
  CHECK(entries[1].lo.duration() == 7.0);
  CHECK(entries[1].hi.duration() == 9.0);  // dips below the previous hi
  CHECK(entries[2].lo.duration() == 12.0);
  // The max picks the already-pessimistic chain (10) over the LO
  // continuation (9).
  CHECK(entries[2].hi.duration() == 20.0);
}

TEST_CASE("degenerate costs collapse both components to prefix sums") {
  RngEngine rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto steps = mcplan::test::random_steps(rng);
    for (auto& s : steps) s.c_hi = s.c_lo;
    const auto entries = mcplan::test::accumulate_entries(steps);
    CostVector sum;
    for (size_t k = 0; k < steps.size(); ++k) {
      sum += steps[k].c_lo;
      CHECK(entries[k].lo == sum);
      CHECK(entries[k].hi == sum);
    }
  }
}

TEST_CASE("accumulate matches the switch-scenario oracle exactly") {
  RngEngine rng(22);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto steps = mcplan::test::random_steps(rng);
    const auto got = mcplan::test::accumulate_entries(steps);
    const auto want = mcplan::test::oracle_entries(steps);
    REQUIRE(got.size() == want.size());
    for (size_t k = 0; k < got.size(); ++k) {
      CHECK(got[k].lo == want[k].lo);
      CHECK(got[k].hi == want[k].hi);
    }
  }
}

TEST_CASE("dominance and LO monotonicity along random branches") {
  RngEngine rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const auto steps = mcplan::test::random_steps(rng);
    const auto entries = mcplan::test::accumulate_entries(steps);
    CostVector prev_lo;
    for (const auto& e : entries) {
      CHECK(all_leq(e.lo, e.hi));
      CHECK(all_leq(prev_lo, e.lo));
      CHECK(all_leq(prev_lo, e.hi));
      prev_lo = e.lo;
    }
  }
}

TEST_CASE("accumulate rejects inverted cost pairs") {
  BranchContext ctx = BranchContext::root();
  CHECK_THROWS_AS(accumulate(ctx, Criticality::LO, CostVector{2.0, 1.0},
                             CostVector{3.0, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("feasibility boundary is inclusive") {
  BudgetEntry entry{CostVector{10.0, 0.0}, CostVector{18.0, 0.0}};
  CHECK(feasible(entry, CostVector{18.0, 0.0}));
  CHECK_FALSE(feasible(entry, CostVector{17.9, 0.0}));
}

TEST_CASE("degenerate costs keep plain prefix-sum feasibility") {
  // With c_lo == c_hi the hi component equals the plain sum, so a budget of
  // exactly that sum stays feasible.
  auto steps = std::vector<OracleStep>{step(Criticality::LO, 2, 2),
                                       step(Criticality::HI, 5, 5),
                                       step(Criticality::LO, 3, 3)};
  const auto entries = mcplan::test::accumulate_entries(steps);
  CHECK(feasible(entries.back(), CostVector{10.0, 0.0}));
  CHECK_FALSE(feasible(entries.back(), CostVector{9.999, 0.0}));
}

TEST_CASE("pessimistic cost mapping accumulates pessimistic prefix sums") {
  // The pessimistic strategy feeds (c_hi, c_hi) pairs into the accumulator:
  // LO(2,4) then HI(5,10) becomes entries (4,4) and (14,14).
  const auto entries = mcplan::test::accumulate_entries(
      {step(Criticality::LO, 4, 4), step(Criticality::HI, 10, 10)});
  CHECK(entries[0].lo.duration() == 4.0);
  CHECK(entries[0].hi.duration() == 4.0);
  CHECK(entries[1].lo.duration() == 14.0);
  CHECK(entries[1].hi.duration() == 14.0);
}

TEST_CASE("switch decision is strict per resource") {
  CHECK(switch_decision(CostVector{9.9, 1.0}, CostVector{10.0, 1.0}) ==
        Mode::LO);
  CHECK(switch_decision(CostVector{10.1, 0.5}, CostVector{10.0, 1.0}) ==
        Mode::HI);
  CHECK(switch_decision(CostVector{10.0, 1.0}, CostVector{10.0, 1.0}) ==
        Mode::LO);
}
