#pragma once

#include <optional>
#include <string>
#include <utility>

#include "json.hpp"
#include "kfp/grid.hpp"
#include "kfp/mte.hpp"
#include "kfp/repcls.hpp"

// JSON schemas. Rationals are "p/q" strings; unknown fields are rejected.
//   config:   {"period": [m, n], "edges": [{"pos": [x, y], "label": k}], "alpha"?: ["a1", "a2"]}
//   poly:     {"coeffs": ["c0", "c1", ...]} or {"roots": [["r", mult], ...], "factor": "c"}
//   factored: {"alpha": [...], "scale1": "s", "scale2": "s", "blocks": [{"shift": "r", "config": <config>}]}
// Positions are doubled coordinates: faces (even, even), vertices (odd, odd).
namespace kfp::io {

using json = nlohmann::ordered_json;

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);
std::string dump(const json& j);  // two-space indent and trailing newline

struct ConfigFile {
  LatticeConfig cfg;
  std::optional<std::pair<Rat, Rat>> alpha;
};

ConfigFile config_from_json(const json& j);
json config_to_json(const LatticeConfig& cfg, const std::optional<std::pair<Rat, Rat>>& alpha = std::nullopt);

json factored_to_json(const FactoredSolution& fs, const Rat& a1, const Rat& a2);
std::pair<FactoredSolution, std::pair<Rat, Rat>> factored_from_json(const json& j);

json poly_to_json(const Poly& p);  // coeffs form
Poly poly_from_json(const json& j);
json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j);
std::pair<Rat, Rat> alpha_from_json(const json& j);
json alpha_to_json(const Rat& a1, const Rat& a2);
std::pair<Rat, Rat> parse_alpha(const std::string& s);  // "a1,a2"

json component_to_json(const ComponentReport& c);
json module_to_json(const ModuleRealization& m);
json report_to_json(const VerifyReport& r);

}  // namespace kfp::io
