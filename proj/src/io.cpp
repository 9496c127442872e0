#include "csc/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "csc/errors.hpp"

namespace csc {

namespace {

std::vector<std::string> string_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw MalformedInstance(std::string("missing array '") + key + "'");
  std::vector<std::string> out;
  for (const auto& v : j[key]) {
    if (!v.is_string()) throw MalformedInstance(std::string("'") + key + "' holds a non-string");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

Json instance_to_json(const Hypergraph& h) {
  Json j;
  j["players"] = h.players;
  j["resources"] = h.resources;
  Json configs = Json::array();
  for (const Configuration& c : h.configs) {
    Json jc;
    jc["player"] = h.players[c.player];
    Json rs = Json::array();
    for (int r : c.resources) rs.push_back(h.resources[r]);
    jc["resources"] = std::move(rs);
    configs.push_back(std::move(jc));
  }
  j["configs"] = std::move(configs);
  return j;
}

Hypergraph instance_from_json(const Json& j) {
  if (!j.is_object()) throw MalformedInstance("instance is not a JSON object");
  auto players = string_array(j, "players");
  auto resources = string_array(j, "resources");
  if (!j.contains("configs") || !j["configs"].is_array())
    throw MalformedInstance("missing array 'configs'");
  std::vector<RawConfig> raw;
  for (const auto& jc : j["configs"]) {
    if (!jc.is_object() || !jc.contains("player") || !jc["player"].is_string())
      throw MalformedInstance("config without a player id");
    RawConfig rc;
    rc.player = jc["player"].get<std::string>();
    rc.resources = string_array(jc, "resources");
    raw.push_back(std::move(rc));
  }
  return make_hypergraph(std::move(players), std::move(resources), raw);
}

Json solution_to_json(const Hypergraph& h, const RelaxedMatching& sol) {
  Json entries = Json::array();
  for (std::size_t p = 0; p < sol.entries.size(); ++p) {
    const auto& e = sol.entries[p];
    if (!e) continue;
    Json je;
    je["player"] = h.players[p];
    je["config"] = e->config;
    Json kept = Json::array();
    for (int r : e->kept) kept.push_back(h.resources[r]);
    je["kept"] = std::move(kept);
    entries.push_back(std::move(je));
  }
  Json j;
  j["entries"] = std::move(entries);
  return j;
}

RelaxedMatching solution_from_json(const Hypergraph& h, const Json& j) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw MalformedSolution("solution is missing array 'entries'");
  RelaxedMatching sol(h.players.size());
  for (const auto& je : j["entries"]) {
    if (!je.is_object() || !je.contains("player") || !je["player"].is_string())
      throw MalformedSolution("entry without a player id");
    auto p = h.player_index(je["player"].get<std::string>());
    if (!p) throw MalformedSolution("entry for unknown player '" + je["player"].get<std::string>() + "'");
    if (sol.entries[*p]) throw MalformedSolution("two entries for player '" + h.players[*p] + "'");
    if (!je.contains("config") || !je["config"].is_number_integer())
      throw MalformedSolution("entry for '" + h.players[*p] + "' lacks a config index");
    MatchEntry e;
    e.config = je["config"].get<int>();
    if (e.config < 0 || e.config >= h.num_configs())
      throw MalformedSolution("entry for '" + h.players[*p] + "': config index out of range");
    if (!je.contains("kept") || !je["kept"].is_array())
      throw MalformedSolution("entry for '" + h.players[*p] + "' lacks 'kept'");
    for (const auto& rv : je["kept"]) {
      if (!rv.is_string()) throw MalformedSolution("kept id is not a string");
      auto r = h.resource_index(rv.get<std::string>());
      if (!r) throw MalformedSolution("unknown kept resource '" + rv.get<std::string>() + "'");
      e.kept.push_back(*r);
    }
    std::sort(e.kept.begin(), e.kept.end());
    sol.entries[*p] = std::move(e);
  }
  return sol;
}

Json verify_report_to_json(const VerifyReport& rep) {
  static const char* names[] = {"player_uncovered", "wrong_player", "kept_empty",
                                "kept_not_subset", "overlap"};
  Json j;
  j["accepted"] = rep.accepted;
  j["alpha"] = alpha_str(rep.alpha);
  j["target"] = rat_str(rep.target);
  Json v = Json::array();
  for (const Violation& viol : rep.violations) {
    Json jv;
    jv["kind"] = names[viol.kind];
    jv["detail"] = viol.detail;
    v.push_back(std::move(jv));
  }
  j["violations"] = std::move(v);
  return j;
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spew(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

Json parse_json(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(what + ": not valid JSON");
  return j;
}

}  // namespace csc
