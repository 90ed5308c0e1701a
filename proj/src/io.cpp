#include "kfp/io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "kfp/errors.hpp"

namespace kfp::io {

namespace {

void only_fields(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) fail(Errc::InvalidInput, std::string(what) + " must be a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.count(k)) fail(Errc::InvalidInput, std::string(what) + ": unknown field \"" + k + "\"");
  }
}

const json& field(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) fail(Errc::InvalidInput, std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

i64 get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(Errc::InvalidInput, std::string(what) + " must be an integer");
  return j.get<i64>();
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& x : r) row.push_back(rat_str(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::InvalidInput, path + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::InvalidInput, "cannot write " + path);
  out << dump(j);
}

json rat_to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Errc::InvalidInput, "malformed rational \"" + j.get<std::string>() + "\"");
    }
  }
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<i64>())));
  fail(Errc::InvalidInput, "rationals must be \"p/q\" strings, got " + j.dump());
}

std::pair<Rat, Rat> parse_alpha(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) fail(Errc::InvalidInput, "alpha must be \"a1,a2\", got \"" + s + "\"");
  return {rat_from_json(s.substr(0, comma)), rat_from_json(s.substr(comma + 1))};
}

std::pair<Rat, Rat> alpha_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(Errc::InvalidInput, "alpha must be a pair of \"p/q\" strings");
  return {rat_from_json(j[0]), rat_from_json(j[1])};
}

json alpha_to_json(const Rat& a1, const Rat& a2) { return json::array({rat_str(a1), rat_str(a2)}); }

ConfigFile config_from_json(const json& j) {
  only_fields(j, {"period", "edges", "alpha"}, "config");
  const json& per = field(j, "period", "config");
  if (!per.is_array() || per.size() != 2) fail(Errc::InvalidInput, "config: period must be [m, n]");
  Period p = make_period(static_cast<int>(get_int(per[0], "period")), static_cast<int>(get_int(per[1], "period")));
  std::vector<std::pair<Site, int>> raw;
  const json& edges = field(j, "edges", "config");
  if (!edges.is_array()) fail(Errc::InvalidInput, "config: edges must be an array");
  for (const auto& e : edges) {
    only_fields(e, {"pos", "label"}, "edge");
    const json& pos = field(e, "pos", "edge");
    if (!pos.is_array() || pos.size() != 2) fail(Errc::InvalidInput, "edge: pos must be [x, y]");
    raw.push_back({Site{get_int(pos[0], "pos"), get_int(pos[1], "pos")},
                   static_cast<int>(get_int(field(e, "label", "edge"), "label"))});
  }
  ConfigFile out{validate_config(p, raw), std::nullopt};
  if (j.contains("alpha")) out.alpha = alpha_from_json(j["alpha"]);
  return out;
}

json config_to_json(const LatticeConfig& cfg, const std::optional<std::pair<Rat, Rat>>& alpha) {
  json j;
  j["period"] = json::array({cfg.period().m, cfg.period().n});
  json edges = json::array();
  for (const auto& [s, k] : cfg.labels()) {
    edges.push_back(json{{"pos", json::array({s.x, s.y})}, {"label", k}});
  }
  j["edges"] = std::move(edges);
  if (alpha) j["alpha"] = alpha_to_json(alpha->first, alpha->second);
  return j;
}

json poly_to_json(const Poly& p) {
  json c = json::array();
  for (const auto& x : p.coeffs()) c.push_back(rat_str(x));
  return json{{"coeffs", std::move(c)}};
}

Poly poly_from_json(const json& j) {
  if (j.contains("coeffs")) {
    only_fields(j, {"coeffs"}, "polynomial");
    const json& c = j["coeffs"];
    if (!c.is_array()) fail(Errc::InvalidInput, "polynomial: coeffs must be an array");
    std::vector<Rat> cs;
    for (const auto& x : c) cs.push_back(rat_from_json(x));
    return Poly::from_coeffs(std::move(cs));
  }
  only_fields(j, {"roots", "factor"}, "polynomial");
  const json& r = field(j, "roots", "polynomial");
  if (!r.is_array()) fail(Errc::InvalidInput, "polynomial: roots must be an array");
  std::map<Rat, int> roots;
  for (const auto& e : r) {
    if (!e.is_array() || e.size() != 2) fail(Errc::InvalidInput, "polynomial: roots entries are [\"r\", mult]");
    i64 mult = get_int(e[1], "root multiplicity");
    if (mult < 1) fail(Errc::InvalidInput, "polynomial: root multiplicity must be positive");
    roots[rat_from_json(e[0])] += static_cast<int>(mult);
  }
  Rat factor = j.contains("factor") ? rat_from_json(j["factor"]) : Rat(1);
  if (factor == 0) fail(Errc::InvalidInput, "polynomial: factor must be nonzero");
  return Poly::from_roots(roots, factor);
}

json factored_to_json(const FactoredSolution& fs, const Rat& a1, const Rat& a2) {
  json j;
  j["alpha"] = alpha_to_json(a1, a2);
  j["scale1"] = rat_str(fs.scale1);
  j["scale2"] = rat_str(fs.scale2);
  json blocks = json::array();
  for (const auto& b : fs.blocks) {
    blocks.push_back(json{{"shift", rat_str(b.shift)}, {"config", config_to_json(b.cfg)}});
  }
  j["blocks"] = std::move(blocks);
  return j;
}

std::pair<FactoredSolution, std::pair<Rat, Rat>> factored_from_json(const json& j) {
  only_fields(j, {"alpha", "scale1", "scale2", "blocks"}, "factored solution");
  auto alpha = alpha_from_json(field(j, "alpha", "factored solution"));
  FactoredSolution fs;
  if (j.contains("scale1")) fs.scale1 = rat_from_json(j["scale1"]);
  if (j.contains("scale2")) fs.scale2 = rat_from_json(j["scale2"]);
  const json& blocks = field(j, "blocks", "factored solution");
  if (!blocks.is_array()) fail(Errc::InvalidInput, "factored solution: blocks must be an array");
  for (const auto& b : blocks) {
    only_fields(b, {"shift", "config"}, "block");
    fs.blocks.push_back(Block{config_from_json(field(b, "config", "block")).cfg,
                              rat_from_json(field(b, "shift", "block"))});
  }
  return {fs, alpha};
}

json component_to_json(const ComponentReport& c) {
  json j;
  j["id"] = c.id;
  j["kind"] = kind_name(c.kind);
  j["area"] = c.area ? json(*c.area) : json(nullptr);
  json faces = json::array();
  for (auto t : c.faces) faces.push_back(t);
  j["faces"] = std::move(faces);
  json sup = json::array();
  for (const auto& v : c.support) sup.push_back(rat_str(v));
  j["support"] = std::move(sup);
  if (c.winding) {
    j["winding"] = json::array({json::array({c.winding->first.x, c.winding->first.y}),
                                json::array({c.winding->second.x, c.winding->second.y})});
  }
  return j;
}

json report_to_json(const VerifyReport& r) {
  json checks = json::array();
  for (const auto& [name, pass] : r.checks) checks.push_back(json{{"name", name}, {"pass", pass}});
  return json{{"ok", r.ok()}, {"checks", std::move(checks)}};
}

json module_to_json(const ModuleRealization& m) {
  json j;
  j["alpha"] = alpha_to_json(m.a1, m.a2);
  j["component"] = m.component_id;
  j["xi"] = rat_str(m.xi);
  j["incontractible"] = m.incontractible;
  j["dim"] = m.basis.size();
  json basis = json::array();
  for (const auto& w : m.basis) basis.push_back(rat_str(w));
  j["basis"] = std::move(basis);
  j["H"] = matrix_to_json(m.h);
  j["X1+"] = matrix_to_json(m.x1p);
  j["X1-"] = matrix_to_json(m.x1m);
  j["X2+"] = matrix_to_json(m.x2p);
  j["X2-"] = matrix_to_json(m.x2m);
  j["verification"] = report_to_json(m.verification);
  return j;
}

}  // namespace kfp::io
