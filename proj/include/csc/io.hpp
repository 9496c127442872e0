#pragma once

#include <json.hpp>

#include <string>

#include "csc/core.hpp"

namespace csc {

using Json = nlohmann::ordered_json;

// Instance format:
//   {"players": ["p1", ...], "resources": ["r1", ...],
//    "configs": [{"player": "p1", "resources": ["r1", "r2"]}, ...]}
// A configuration is referred to elsewhere by its position in "configs".
Json instance_to_json(const Hypergraph& h);
Hypergraph instance_from_json(const Json& j);

// Solution format:
//   {"entries": [{"player": "p1", "config": 0, "kept": ["r1"]}, ...]}
Json solution_to_json(const Hypergraph& h, const RelaxedMatching& sol);
RelaxedMatching solution_from_json(const Hypergraph& h, const Json& j);

Json verify_report_to_json(const VerifyReport& rep);

/// Reads a whole file ("-" means stdin). Throws Error when unreadable.
std::string slurp(const std::string& path);
/// Writes text to a file ("-" means stdout).
void spew(const std::string& path, const std::string& text);

Json parse_json(const std::string& text, const std::string& what);

}  // namespace csc
