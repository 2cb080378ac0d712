#pragma once

// JSON serialization for instances and allocations.  The instance format is
// a bit-exact contract:
//   {"agents":[{"name":"a1","weight":"3/2"},...],
//    "goods":["g1",...],
//    "valuations":[[1,0,...],...]}
// Weights are strings, either a base-10 integer or "p/q" with q >= 1.
// Allocations reference goods by name:
//   {"bundles":[["g1","g2"],["g3"],...],"unallocated":["g9"]}

#include <istream>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "core.hpp"

namespace wnash {

using Json = nlohmann::ordered_json;

inline Instance parse_instance(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  for (const char* key : {"agents", "goods", "valuations"})
    if (!j.contains(key) || !j.at(key).is_array())
      throw ParseError(std::string("missing or non-array \"") + key +
                       "\" member");

  Instance inst;
  const auto& agents = j.at("agents");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const auto& a = agents[i];
    const std::string where = "agent " + std::to_string(i + 1);
    if (!a.is_object() || !a.contains("name") || !a.contains("weight"))
      throw ParseError(where + ": expected an object with name and weight");
    if (!a.at("name").is_string())
      throw ParseError(where + ": name must be a string");
    const std::string name = a.at("name").get<std::string>();
    if (!a.at("weight").is_string())
      throw ParseError(where + " (\"" + name +
                       "\"): weight must be a string such as \"3/2\"");
    Rational w;
    try {
      w = parse_rational(a.at("weight").get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + " (\"" + name + "\"): " + e.what());
    }
    if (w <= 0)
      throw ParseError("agent \"" + name + "\": non-positive weight");
    inst.agent_names.push_back(name);
    inst.weights.push_back(std::move(w));
  }

  for (std::size_t g = 0; g < j.at("goods").size(); ++g) {
    const auto& name = j.at("goods")[g];
    if (!name.is_string())
      throw ParseError("good " + std::to_string(g + 1) +
                       ": name must be a string");
    inst.good_names.push_back(name.get<std::string>());
  }

  const auto& rows = j.at("valuations");
  if (rows.size() != inst.agent_names.size())
    throw ParseError("valuation row count (" + std::to_string(rows.size()) +
                     ") does not match agent count (" +
                     std::to_string(inst.agent_names.size()) + ")");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string where = "valuation row " + std::to_string(i + 1) +
                              " (agent \"" + inst.agent_names[i] + "\")";
    if (!row.is_array())
      throw ParseError(where + ": expected an array");
    if (row.size() != inst.good_names.size())
      throw ParseError(where + ": expected " +
                       std::to_string(inst.good_names.size()) +
                       " entries, got " + std::to_string(row.size()));
    std::vector<std::uint8_t> parsed;
    for (std::size_t g = 0; g < row.size(); ++g) {
      if (!row[g].is_number_integer() ||
          (row[g] != 0 && row[g] != 1))
        throw ParseError(where + ", column " + std::to_string(g + 1) +
                         " (good \"" + inst.good_names[g] +
                         "\"): entries must be 0 or 1");
      parsed.push_back(row[g].get<int>() != 0 ? 1 : 0);
    }
    inst.valuations.push_back(std::move(parsed));
  }

  validate_instance(inst);
  return inst;
}

inline Instance parse_instance(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(j);
}

inline Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(j);
}

inline Json instance_to_json(const Instance& inst) {
  Json agents = Json::array();
  for (int i = 0; i < inst.agent_count(); ++i) {
    Json a;
    a["name"] = inst.agent_names[static_cast<std::size_t>(i)];
    a["weight"] = format_rational(inst.weights[static_cast<std::size_t>(i)]);
    agents.push_back(std::move(a));
  }
  Json rows = Json::array();
  for (const auto& row : inst.valuations) {
    Json r = Json::array();
    for (auto v : row) r.push_back(static_cast<int>(v));
    rows.push_back(std::move(r));
  }
  Json out;
  out["agents"] = std::move(agents);
  out["goods"] = inst.good_names;
  out["valuations"] = std::move(rows);
  return out;
}

inline Allocation parse_allocation(const Instance& inst,
                                   const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("bundles") || !j.at("bundles").is_array())
    throw ParseError("allocation must be an object with a \"bundles\" array");
  std::unordered_map<std::string, int> index;
  for (int g = 0; g < inst.good_count(); ++g)
    index.emplace(inst.good_names[static_cast<std::size_t>(g)], g);

  const auto to_indices = [&](const nlohmann::json& names,
                              const std::string& where) {
    std::vector<int> out;
    for (const auto& name : names) {
      if (!name.is_string())
        throw ParseError(where + ": good names must be strings");
      const auto it = index.find(name.get<std::string>());
      if (it == index.end())
        throw ParseError(where + ": unknown good \"" +
                         name.get<std::string>() + "\"");
      out.push_back(it->second);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  const auto& bundles = j.at("bundles");
  if (static_cast<int>(bundles.size()) != inst.agent_count())
    throw ParseError("bundle count (" + std::to_string(bundles.size()) +
                     ") does not match agent count (" +
                     std::to_string(inst.agent_count()) + ")");
  Allocation alloc;
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    if (!bundles[i].is_array())
      throw ParseError("bundle " + std::to_string(i + 1) +
                       ": expected an array");
    alloc.bundles.push_back(
        to_indices(bundles[i], "bundle " + std::to_string(i + 1)));
  }
  if (j.contains("unallocated")) {
    if (!j.at("unallocated").is_array())
      throw ParseError("\"unallocated\" must be an array");
    alloc.unallocated = to_indices(j.at("unallocated"), "unallocated");
  }
  alloc.owners(inst.good_count());  // rejects goods listed twice
  return alloc;
}

inline Json allocation_to_json(const Instance& inst, const Allocation& alloc) {
  const auto names = [&](const std::vector<int>& goods) {
    Json arr = Json::array();
    for (int g : goods)
      arr.push_back(inst.good_names[static_cast<std::size_t>(g)]);
    return arr;
  };
  Json bundles = Json::array();
  for (const auto& bundle : alloc.bundles) bundles.push_back(names(bundle));
  Json out;
  out["bundles"] = std::move(bundles);
  out["unallocated"] = names(alloc.unallocated);
  return out;
}

}  // namespace wnash
