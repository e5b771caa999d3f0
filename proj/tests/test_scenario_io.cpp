#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "mcplan/scenario_gen.hpp"
#include "mcplan/scenario_io.hpp"

using namespace mcplan;

TEST_CASE("save/load round-trips bit-exactly") {
  GeneratorOptions opts;
  opts.n_dependencies = 3;
  const Scenario s = generate(123, opts);

  const auto path = std::filesystem::temp_directory_path() /
                    "mcplan_roundtrip_test.json";
  save_scenario(s, path);
  const Scenario loaded = load_scenario(path);
  std::filesystem::remove(path);

  CHECK(loaded == s);
  // Serialization itself is stable too.
  CHECK(scenario_to_json(loaded) == scenario_to_json(s));
}

TEST_CASE("unknown fields are rejected by name") {
  const Scenario s = generate(1);
  std::string text = scenario_to_json(s);
  text.insert(text.rfind('}'), ",\"wind_model\": 3\n");

  CHECK_THROWS_WITH_AS(scenario_from_json(text),
                       doctest::Contains("wind_model"), ParseError);
}

TEST_CASE("unknown action fields are rejected by name") {
  const Scenario s = generate(1);
  std::string text = scenario_to_json(s);
  const auto pos = text.find("\"criticality\"");
  REQUIRE(pos != std::string::npos);
  text.insert(pos, "\"speed\": 1, ");
  CHECK_THROWS_WITH_AS(scenario_from_json(text), doctest::Contains("speed"),
                       ParseError);
}

TEST_CASE("malformed documents carry a parse diagnostic") {
  CHECK_THROWS_AS(scenario_from_json("{\"grid_size\": "), ParseError);
  CHECK_THROWS_WITH_AS(scenario_from_json("[1,2,3]"),
                       doctest::Contains("object"), ParseError);
}

TEST_CASE("missing fields are reported") {
  CHECK_THROWS_WITH_AS(scenario_from_json("{}"),
                       doctest::Contains("grid_size"), ParseError);
}

TEST_CASE("cost-ordering breakage loads and then fails validation") {
  Scenario s = generate(1);
  s.unit_costs.move_hi = CostVector{4.0, 0.1};  // energy below the LO rate
  const std::string text = scenario_to_json(s);

  const Scenario loaded = scenario_from_json(text);  // parsing succeeds
  const auto violations = validate_scenario(loaded);
  bool found = false;
  for (const auto& v : violations) found = found || v.rule == "cost ordering";
  CHECK(found);
}
