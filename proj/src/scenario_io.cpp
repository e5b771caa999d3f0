#include "mcplan/scenario_io.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace mcplan {

namespace {

using nlohmann::json;

json point_to_json(const Point2& p) { return json{{"x", p.x}, {"y", p.y}}; }

json cost_to_json(const CostVector& c) {
  return json{{"duration", c.duration()}, {"energy", c.energy()}};
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key()))
      throw ParseError("unknown field \"" + it.key() + "\" in " + where);
  }
}

double get_number(const json& obj, const char* field,
                  const std::string& where) {
  if (!obj.contains(field))
    throw ParseError("missing field \"" + std::string(field) + "\" in " + where);
  const json& v = obj.at(field);
  if (!v.is_number())
    throw ParseError("field \"" + std::string(field) + "\" in " + where +
                     " must be a number");
  return v.get<double>();
}

Point2 point_from_json(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be an object");
  reject_unknown(obj, {"x", "y"}, where);
  return {get_number(obj, "x", where), get_number(obj, "y", where)};
}

CostVector cost_from_json(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be an object");
  reject_unknown(obj, {"duration", "energy"}, where);
  return {get_number(obj, "duration", where), get_number(obj, "energy", where)};
}

ActionKind kind_from_string(const std::string& s, const std::string& where) {
  if (s == "reach") return ActionKind::Reach;
  if (s == "retrieve_data") return ActionKind::RetrieveData;
  if (s == "recharge_return") return ActionKind::RechargeReturn;
  throw ParseError("unknown action kind \"" + s + "\" in " + where);
}

Criticality criticality_from_string(const std::string& s,
                                    const std::string& where) {
  if (s == "LO") return Criticality::LO;
  if (s == "HI") return Criticality::HI;
  throw ParseError("unknown criticality \"" + s + "\" in " + where);
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json actions = json::array();
  for (const auto& a : s.actions) {
    json deps = json::array();
    for (int d : a.depends_on) deps.push_back(d);
    actions.push_back(json{{"id", a.id},
                           {"kind", to_string(a.kind)},
                           {"x", a.location.x},
                           {"y", a.location.y},
                           {"criticality", to_string(a.criticality)},
                           {"reward", a.reward},
                           {"depends_on", deps}});
  }
  json doc{{"grid_size", s.grid_size},
           {"start", point_to_json(s.start)},
           {"recharge_site", point_to_json(s.recharge_site)},
           {"budget", cost_to_json(s.budget)},
           {"unit_costs",
            json{{"move_lo", cost_to_json(s.unit_costs.move_lo)},
                 {"move_hi", cost_to_json(s.unit_costs.move_hi)},
                 {"retrieve_lo", cost_to_json(s.unit_costs.retrieve_lo)},
                 {"retrieve_hi", cost_to_json(s.unit_costs.retrieve_hi)},
                 {"recharge_lo", cost_to_json(s.unit_costs.recharge_lo)},
                 {"recharge_hi", cost_to_json(s.unit_costs.recharge_hi)}}},
           {"actions", actions},
           {"rng_seed", s.rng_seed}};
  return doc.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario document must be an object");

  reject_unknown(doc,
                 {"grid_size", "start", "recharge_site", "budget",
                  "unit_costs", "actions", "rng_seed"},
                 "scenario");

  Scenario s;
  s.grid_size = get_number(doc, "grid_size", "scenario");
  if (!doc.contains("start") || !doc.contains("recharge_site") ||
      !doc.contains("budget") || !doc.contains("unit_costs") ||
      !doc.contains("actions") || !doc.contains("rng_seed"))
    throw ParseError("scenario document is missing a required field");

  s.start = point_from_json(doc.at("start"), "start");
  s.recharge_site = point_from_json(doc.at("recharge_site"), "recharge_site");
  s.budget = cost_from_json(doc.at("budget"), "budget");

  const json& uc = doc.at("unit_costs");
  if (!uc.is_object()) throw ParseError("unit_costs must be an object");
  reject_unknown(uc,
                 {"move_lo", "move_hi", "retrieve_lo", "retrieve_hi",
                  "recharge_lo", "recharge_hi"},
                 "unit_costs");
  auto cost_field = [&uc](const char* name) {
    if (!uc.contains(name))
      throw ParseError("missing field \"" + std::string(name) +
                       "\" in unit_costs");
    return cost_from_json(uc.at(name), std::string("unit_costs.") + name);
  };
  s.unit_costs.move_lo = cost_field("move_lo");
  s.unit_costs.move_hi = cost_field("move_hi");
  s.unit_costs.retrieve_lo = cost_field("retrieve_lo");
  s.unit_costs.retrieve_hi = cost_field("retrieve_hi");
  s.unit_costs.recharge_lo = cost_field("recharge_lo");
  s.unit_costs.recharge_hi = cost_field("recharge_hi");

  const json& actions = doc.at("actions");
  if (!actions.is_array()) throw ParseError("actions must be an array");
  for (size_t i = 0; i < actions.size(); ++i) {
    const json& ja = actions[i];
    const std::string where = "actions[" + std::to_string(i) + "]";
    if (!ja.is_object()) throw ParseError(where + " must be an object");
    reject_unknown(
        ja, {"id", "kind", "x", "y", "criticality", "reward", "depends_on"},
        where);
    for (const char* f : {"id", "kind", "x", "y", "criticality", "reward",
                          "depends_on"}) {
      if (!ja.contains(f))
        throw ParseError("missing field \"" + std::string(f) + "\" in " + where);
    }
    ActionSpec a;
    if (!ja.at("id").is_number_integer())
      throw ParseError("field \"id\" in " + where + " must be an integer");
    a.id = ja.at("id").get<int>();
    a.kind = kind_from_string(ja.at("kind").get<std::string>(), where);
    a.location = {get_number(ja, "x", where), get_number(ja, "y", where)};
    a.criticality =
        criticality_from_string(ja.at("criticality").get<std::string>(), where);
    a.reward = get_number(ja, "reward", where);
    const json& deps = ja.at("depends_on");
    if (!deps.is_array())
      throw ParseError("field \"depends_on\" in " + where + " must be an array");
    for (const auto& d : deps) {
      if (!d.is_number_integer())
        throw ParseError("depends_on entries in " + where +
                         " must be integers");
      a.depends_on.push_back(d.get<int>());
    }
    s.actions.push_back(std::move(a));
  }

  if (!doc.at("rng_seed").is_number_integer())
    throw ParseError("field \"rng_seed\" must be an integer");
  s.rng_seed = doc.at("rng_seed").get<uint64_t>();
  return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << scenario_to_json(s);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return scenario_from_json(text);
}

}  // namespace mcplan
