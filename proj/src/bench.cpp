#include "mcplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <thread>

#include "mcplan/numfmt.hpp"

namespace mcplan {

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::PessimisticBaseline:
      return "pessimistic_baseline";
    case ExperimentKind::OptimisticBaseline:
      return "optimistic_baseline";
    case ExperimentKind::ComputationSweep:
      return "computation_sweep";
  }
  return "?";
}

namespace {

std::vector<AccountingStrategy> experiment_strategies(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::PessimisticBaseline:
    case ExperimentKind::ComputationSweep:
      return {AccountingStrategy::PessimisticOnly,
              AccountingStrategy::MixedCriticality};
    case ExperimentKind::OptimisticBaseline:
      return {AccountingStrategy::OptimisticOnly,
              AccountingStrategy::MixedCriticality};
  }
  return {};
}

double pessimistic_tour_duration(const Scenario& s) {
  // Nearest-neighbour tour over all targets ending at the recharge site,
  // costed with the pessimistic table. Generous enough to admit every
  // objective when used as a time budget.
  std::vector<const ActionSpec*> left;
  const ActionSpec* recharge = nullptr;
  for (const auto& a : s.actions) {
    if (a.kind == ActionKind::RechargeReturn)
      recharge = &a;
    else
      left.push_back(&a);
  }
  Point2 pos = s.start;
  double total = 0.0;
  while (!left.empty()) {
    size_t best = 0;
    for (size_t i = 1; i < left.size(); ++i) {
      if (distance(pos, left[i]->location) <
          distance(pos, left[best]->location))
        best = i;
    }
    total += action_cost(s, pos, *left[best], Mode::HI)[Resource::Duration];
    pos = left[best]->location;
    left.erase(left.begin() + best);
  }
  if (recharge != nullptr)
    total += action_cost(s, pos, *recharge, Mode::HI)[Resource::Duration];
  return total;
}

}  // namespace

std::vector<Scenario> experiment_scenarios(const ExperimentSpec& spec) {
  std::vector<Scenario> set;
  set.reserve(spec.scenarios);
  GeneratorOptions opts;
  opts.n_targets = spec.n_targets;
  opts.n_hi = spec.n_hi;
  opts.grid = spec.grid;
  opts.table1_literal = spec.table1_literal;
  for (int i = 0; i < spec.scenarios; ++i) {
    const uint64_t scenario_seed =
        RngEngine::derive(spec.seed, 0x5ce7a110, static_cast<uint64_t>(i))
            .next_u64();
    set.push_back(generate(scenario_seed, opts));
  }
  return set;
}

std::vector<double> default_time_budgets(const std::vector<Scenario>& set,
                                         int count) {
  if (set.empty() || count < 1)
    throw std::invalid_argument("default_time_budgets: empty input");
  double lo = 0.0, hi = 0.0;
  for (const auto& s : set) {
    const ActionSpec* recharge = s.recharge_action();
    if (recharge == nullptr)
      throw std::invalid_argument("scenario without recharge_return");
    lo = std::max(
        lo, action_cost(s, s.start, *recharge, Mode::HI)[Resource::Duration]);
    hi = std::max(hi, pessimistic_tour_duration(s));
  }
  std::vector<double> budgets;
  if (count == 1) {
    budgets.push_back(lo);
  } else {
    for (int i = 0; i < count; ++i)
      budgets.push_back(lo + (hi - lo) * i / (count - 1));
  }
  return budgets;
}

ResultTable run_experiment(const ExperimentSpec& spec) {
  if (spec.scenarios < 1 || spec.runs_per_scenario < 1)
    throw std::invalid_argument("run_experiment: positive counts required");
  if (spec.experiment == ExperimentKind::ComputationSweep &&
      spec.computation_budgets.empty())
    throw std::invalid_argument("run_experiment: empty computation sweep");

  const std::vector<Scenario> base_set = experiment_scenarios(spec);

  std::vector<double> time_budgets = spec.time_budgets;
  std::vector<int> comp_budgets;
  if (spec.experiment == ExperimentKind::ComputationSweep) {
    time_budgets = {spec.sweep_time_budget};
    comp_budgets = spec.computation_budgets;
  } else {
    if (time_budgets.empty())
      time_budgets = default_time_budgets(base_set, spec.auto_budget_count);
    comp_budgets = {spec.computation_budget};
  }

  struct Task {
    AccountingStrategy strategy;
    double time_budget;
    int comp_budget;
    int scenario_id;
    int run_id;
    uint64_t seed;
  };
  std::vector<Task> tasks;
  for (AccountingStrategy strategy : experiment_strategies(spec.experiment)) {
    for (size_t ti = 0; ti < time_budgets.size(); ++ti) {
      for (size_t ci = 0; ci < comp_budgets.size(); ++ci) {
        for (int sc = 0; sc < spec.scenarios; ++sc) {
          for (int run = 0; run < spec.runs_per_scenario; ++run) {
            // The run seed ignores the strategy so both strategies face the
            // same sampled environments (paired comparison).
            const uint64_t point = (ti << 24) ^ (ci << 16) ^
                                   (static_cast<uint64_t>(sc) << 32);
            const uint64_t seed =
                RngEngine::derive(spec.seed, point,
                                  static_cast<uint64_t>(run))
                    .next_u64();
            tasks.push_back({strategy, time_budgets[ti], comp_budgets[ci], sc,
                             run, seed});
          }
        }
      }
    }
  }

  ResultTable table;
  table.experiment = spec.experiment;
  table.rows.resize(tasks.size());

  int workers = spec.workers > 0
                    ? spec.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));

  std::atomic<size_t> cursor{0};
  auto work = [&] {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];

      Scenario scenario = base_set[t.scenario_id];
      scenario.budget[Resource::Duration] = t.time_budget;

      SearchConfig cfg;
      cfg.computation_budget = t.comp_budget;
      cfg.horizon = spec.horizon;
      cfg.exploration_c = spec.exploration_c;
      cfg.strategy = t.strategy;

      RngEngine rng(t.seed);
      const MissionResult r =
          run_mission(scenario, cfg, spec.profile, spec.replan_period, rng);

      RunRecord rec;
      rec.strategy = t.strategy;
      rec.time_budget = t.time_budget;
      rec.computation_budget = t.comp_budget;
      rec.scenario_id = t.scenario_id;
      rec.run_id = t.run_id;
      rec.success = r.success;
      rec.objectives = r.objectives_achieved;
      rec.hi_completed = r.hi_completed;
      rec.lo_completed = r.lo_completed;
      rec.mode_switches = r.mode_switch_count;
      rec.consumed = r.final_consumed;
      table.rows[i] = rec;
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
  return table;
}

std::vector<SummaryRow> aggregate(const ResultTable& table) {
  struct Key {
    AccountingStrategy strategy;
    double time_budget;
    int comp_budget;
    bool operator<(const Key& o) const {
      if (strategy != o.strategy) return strategy < o.strategy;
      if (time_budget != o.time_budget) return time_budget < o.time_budget;
      return comp_budget < o.comp_budget;
    }
  };
  std::map<Key, std::vector<const RunRecord*>> groups;
  std::vector<Key> order;
  for (const auto& row : table.rows) {
    const Key key{row.strategy, row.time_budget, row.computation_budget};
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.push_back(&row);
  }

  std::vector<SummaryRow> out;
  for (const Key& key : order) {
    const auto& rows = groups[key];
    const int n = static_cast<int>(rows.size());
    double mean = 0.0, successes = 0.0;
    for (const RunRecord* r : rows) {
      mean += r->objectives;
      successes += r->success ? 1.0 : 0.0;
    }
    mean /= n;
    double var = 0.0;
    for (const RunRecord* r : rows) {
      const double d = r->objectives - mean;
      var += d * d;
    }
    const double stderr_mean =
        n > 1 ? std::sqrt(var / (n - 1)) / std::sqrt(static_cast<double>(n))
              : 0.0;
    out.push_back({table.experiment, key.strategy, key.time_budget,
                   key.comp_budget, n, mean, stderr_mean, successes / n});
  }
  return out;
}

std::string detailed_csv(const ResultTable& table) {
  std::string out =
      "experiment,strategy,time_budget,computation_budget,scenario_id,run_id,"
      "success,objectives,hi_completed,lo_completed,mode_switches,"
      "consumed_duration,consumed_energy\n";
  for (const auto& r : table.rows) {
    out += std::string(to_string(table.experiment)) + ',';
    out += std::string(to_string(r.strategy)) + ',';
    out += format_double(r.time_budget) + ',';
    out += std::to_string(r.computation_budget) + ',';
    out += std::to_string(r.scenario_id) + ',';
    out += std::to_string(r.run_id) + ',';
    out += std::string(r.success ? "1" : "0") + ',';
    out += std::to_string(r.objectives) + ',';
    out += std::to_string(r.hi_completed) + ',';
    out += std::to_string(r.lo_completed) + ',';
    out += std::to_string(r.mode_switches) + ',';
    out += format_double(r.consumed.duration()) + ',';
    out += format_double(r.consumed.energy()) + '\n';
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "experiment,strategy,time_budget,computation_budget,runs,"
      "mean_objectives,stderr_objectives,success_rate\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.experiment)) + ',';
    out += std::string(to_string(r.strategy)) + ',';
    out += format_double(r.time_budget) + ',';
    out += std::to_string(r.computation_budget) + ',';
    out += std::to_string(r.runs) + ',';
    out += format_double(r.mean_objectives) + ',';
    out += format_double(r.stderr_objectives) + ',';
    out += format_double(r.success_rate) + '\n';
  }
  return out;
}

void emit_csv(const ResultTable& table, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "runs.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write runs.csv");
    out << detailed_csv(table);
  }
  {
    std::ofstream out(out_dir / "summary.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write summary.csv");
    out << summary_csv(aggregate(table));
  }
}

}  // namespace mcplan
