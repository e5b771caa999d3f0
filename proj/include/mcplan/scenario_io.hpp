#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "mcplan/model.hpp"

namespace mcplan {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Serializes a scenario to its JSON document form. Field set is fixed:
/// grid_size, start, recharge_site, budget, unit_costs, actions[], rng_seed.
std::string scenario_to_json(const Scenario& s);

/// Parses a scenario document. Unknown fields are rejected with an error
/// naming the field; structural invariants are NOT checked here (run
/// validate_scenario on the result).
Scenario scenario_from_json(const std::string& text);

void save_scenario(const Scenario& s, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace mcplan
